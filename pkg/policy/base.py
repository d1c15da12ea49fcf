from abc import ABC, abstractmethod

from policy.actions import ActionChunk
from sensing.schema import Observation


class BasePolicy(ABC):
    horizon: int
    obs_horizon: int = 1

    @abstractmethod
    def infer(self, obs: Observation) -> ActionChunk:
        """Observation -> (horizon, 9) chunk of offsets relative to obs.pose9d"""
        pass
