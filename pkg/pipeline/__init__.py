from pipeline.base import BaseNode, BasePipeline, NodeContext

__all__ = ["BaseNode", "BasePipeline", "NodeContext"]
