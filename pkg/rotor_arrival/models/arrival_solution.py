"""Result of the generalized ARRIVAL solver on a path instance."""

from dataclasses import dataclass


@dataclass(frozen=True)
class ArrivalSolution:
    """Sink counts and final rotor class after fully routing (rho, sigma)."""

    m_right: int  # particles on u_{n+1}
    m_left: int  # particles on u_0
    final_g: int  # arcmonic value shared by every final rotor configuration
    final_class: int  # final_g mod F
    F: int  # noqa: N815
    h_sigma: int
    g_rho: int
    closed_form: bool = False
    decompositions: int = 0  # stable decompositions computed
    digit_steps: int = 0  # big-integer digit extractions performed

    @property
    def degree(self) -> int:
        return self.m_right + self.m_left
