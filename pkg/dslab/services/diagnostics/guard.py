from typing import List, Optional, Sequence, Tuple

import numpy as np

from dslab.enums.types import StopReason
from dslab.schemas.params import GuardConfig
from dslab.schemas.results import DiagnosticsRecord


class GuardDecision:
    """
    守卫判定结果: continue 或 halt(reason)
    """

    def __init__(self, halt: bool, reason: Optional[StopReason] = None, message: str = ""):
        self.halt = halt
        self.reason = reason
        self.message = message

    def __bool__(self):
        return self.halt

    def __repr__(self):
        return f"GuardDecision(halt={self.halt}, reason={self.reason})"


CONTINUE = GuardDecision(False)


def relative_energy_deviation(series: Sequence[DiagnosticsRecord]) -> Tuple[List[float], bool]:
    """
    ΔE(t) = E(t)/E(0) − 1 for every record.

    Returns the deviations and a flag that is True when E(0) = 0 and absolute
    deviations were reported instead.
    """
    if not series:
        return [], False
    e0 = series[0].energy
    energies = np.array([r.energy for r in series], dtype=float)
    if e0 == 0:
        return list(energies - e0), True
    return list(energies / e0 - 1.0), False


def resolution_guard(record: DiagnosticsRecord, guard: GuardConfig) -> GuardDecision:
    """Halt once |ΔE| exceeds the threshold (loss of resolution)."""
    if not np.isfinite(record.delta_e) or abs(record.delta_e) > guard.delta_e_threshold:
        return GuardDecision(
            True,
            StopReason.ENERGY_GUARD,
            f"|ΔE| = {abs(record.delta_e):.3e} > {guard.delta_e_threshold:.1e} "
            f"at step {record.step}, t = {record.t:.6f}",
        )
    return CONTINUE
