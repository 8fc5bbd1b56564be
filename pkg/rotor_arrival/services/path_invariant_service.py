"""
Path Invariant Service.

Harmonic and arcmonic invariants of P^{x,y}_n:

- h on particles, linear in sigma, with h(u_k) = sum of d_i for i < k
- g on arcs: g(a^k_j) = j d_k for j <= x, (x + y - j) d_{k-1} otherwise
- g(rho) - h(sigma), preserved by every routing, firing and cycle push
- rotor and particle equivalence tests, sandpile classes modulo F
"""

from rotor_arrival.models.multigraph import ParticleConfig, RotorConfig
from rotor_arrival.models.path_instance import PathInstance


class PathInvariantService:
    """Invariants of one path instance."""

    def __init__(self, instance: PathInstance):
        self.instance = instance

    def harmonic_h(self, sigma: ParticleConfig) -> int:
        """
        h(sigma) = sum of sigma(u_k) h(u_k).

        Raises:
            DimensionMismatchError: sigma has not n + 2 entries
        """
        self.instance.graph.check_particles(sigma)
        return sum(count * h for count, h in zip(sigma, self.instance.h_table))

    def arcmonic_g_arc(self, k: int, j: int) -> int:
        """
        g(a^k_j).

        Raises:
            IndexOutOfRangeError: k outside [1, n] or j outside [0, x + y - 1]
        """
        self.instance.arc_id(k, j)
        x, y, d = self.instance.x, self.instance.y, self.instance.d
        if j <= x:
            return j * d[k]
        return (x + y - j) * d[k - 1]

    def arcmonic_g(self, rotor: RotorConfig) -> int:
        """g(rho), summed over the current arcs of u_1..u_n."""
        self.instance.graph.check_rotor(rotor)
        return sum(self.arcmonic_g_arc(k, rotor[k]) for k in range(1, self.instance.n + 1))

    def class_value(self, rotor: RotorConfig, sigma: ParticleConfig) -> int:
        """g(rho) - h(sigma)."""
        return self.arcmonic_g(rotor) - self.harmonic_h(sigma)

    def rotor_equivalent(self, first: RotorConfig, second: RotorConfig) -> bool:
        """Cycle-push equivalence: equal arcmonic values."""
        return self.arcmonic_g(first) == self.arcmonic_g(second)

    def particle_equivalent(self, first: ParticleConfig, second: ParticleConfig) -> bool:
        """Firing equivalence: equal h and equal degree."""
        return (
            self.harmonic_h(first) == self.harmonic_h(second)
            and first.degree == second.degree
        )

    def sandpile_class(self, sigma: ParticleConfig) -> int:
        """h(sigma) mod F, the image of sigma in the cyclic sandpile group."""
        return self.harmonic_h(sigma) % self.instance.F

    def rotor_class(self, rotor: RotorConfig) -> int:
        """g(rho) mod F."""
        return self.arcmonic_g(rotor) % self.instance.F
