"""
dynamics_service - 势能族、非线性积分与线性化
"""

from .core import integrate, integrate_linearized, linearize, sampling_step, total_energy
from .potentials import Potential, QuadraticCoupling, QuarticDegenerate, WeightedQuadratic, potential_from_name
from .schemas import IntegrationSettings, LinearResponse, LinearizedSystem, State, Trajectory, TrajectoryMeta
from .utils import finite_difference_gradient, read_trajectory_csv, write_trajectory_csv
from .exceptions import DynamicsError, PotentialError, IntegrationError

__all__ = [
    "integrate",
    "integrate_linearized",
    "linearize",
    "sampling_step",
    "total_energy",
    "Potential",
    "QuadraticCoupling",
    "QuarticDegenerate",
    "WeightedQuadratic",
    "potential_from_name",
    "IntegrationSettings",
    "LinearResponse",
    "LinearizedSystem",
    "State",
    "Trajectory",
    "TrajectoryMeta",
    "finite_difference_gradient",
    "read_trajectory_csv",
    "write_trajectory_csv",
    "DynamicsError",
    "PotentialError",
    "IntegrationError",
]
