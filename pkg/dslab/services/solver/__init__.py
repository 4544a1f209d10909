from dslab.services.solver.split_step import (
    YOSHIDA_W0,
    YOSHIDA_W1,
    EvolutionResult,
    SplitStepSolver,
    evolve,
    linear_substep,
    nonlinear_substep,
    nonlocal_potential,
    strang_step,
    yoshida4_step,
)

__all__ = [
    "YOSHIDA_W0",
    "YOSHIDA_W1",
    "EvolutionResult",
    "SplitStepSolver",
    "evolve",
    "linear_substep",
    "nonlinear_substep",
    "nonlocal_potential",
    "strang_step",
    "yoshida4_step",
]
