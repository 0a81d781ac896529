"""Tolerance bundle threaded through the pipeline.

All values are relative unless noted. The defaults are the ones the
acceptance suite is calibrated against; ``strict`` and ``loose`` scale the
acceptance-side thresholds by 0.1x / 10x while leaving hard construction
checks alone.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # polynomial / linear algebra layer
    vander_node_sep: float = 1e-8     # min pairwise node distance / max |node|
    hurwitz: float = 1e-9             # stability margin: Re(root) < -hurwitz
    # validation layer
    pole_sep: float = 1e-7            # min pairwise pole distance / max |pole|
    coprime: float = 1e-12            # |e(pole)| / max|e coeff| floor
    # first-order-condition layer
    build_m_residual: float = 1e-10   # ||M V(-d) - diag(e) V(d)|| check
    q0: float = 1e-10                 # |leading atilde coeff| / ||atilde||
    real: float = 1e-6                # max |Im coeff| / (1 + max |coeff|)
    # eigen layer
    eig_residual: float = 1e-7        # ||A_i v - xi_i v|| / ||A_i||_F
    cluster: float = 1e-5             # dedup: ||xi - u|| / max(||xi||, ||u||)
    zero_solution: float = 1e-9       # ||xi|| / (1 + max ||xi|| over solutions)
    commutation: float = 1e-10        # pairwise commutator, relative Frobenius
    # selection layer
    value_real: float = 1e-6          # |Im phi| / (1 + |phi|)
    value_cluster: float = 1e-8       # distinctness of critical values
    cross_check: float = 1e-6         # |phi - distance^2| / (1 + phi)

    def scaled(self, factor: float) -> "Tolerances":
        """Scale the acceptance-side thresholds (not construction checks)."""
        return replace(
            self,
            real=self.real * factor,
            q0=self.q0 * factor,
            eig_residual=self.eig_residual * factor,
            value_real=self.value_real * factor,
            cross_check=self.cross_check * factor,
        )


PROFILES = {
    "default": Tolerances(),
    "strict": Tolerances().scaled(0.1),
    "loose": Tolerances().scaled(10.0),
}
