"""
Convergence Table Reproduction Script

Prints the ratio table 𝒯^j(φ_i) on the unit disk next to the reference values
and the exact eigenvalues j_{0,k}², then checks the whole-spectrum closed form
for the disk. Exits non-zero when a ratio drifts more than 1e-3 from its
reference.
"""

import sys

import numpy as np
from dotenv import load_dotenv
from scipy.special import jn_zeros

from spectral_green.geometry.ball import BallGeometry
from spectral_green.geometry.warping import WarpingFunction
from spectral_green.models.spectral_models import MultiplicityMode, SolveConfig
from spectral_green.services.eigensolve import convergence_table
from spectral_green.services.series import whole_spectrum_sum_sq

# Set UTF-8 encoding for Windows console
if sys.platform == "win32":
    sys.stdout.reconfigure(encoding='utf-8')

load_dotenv()

REFERENCE = [
    [5.80381, 5.78388, 5.78321, 5.78319],
    [31.8311, 30.6656, 30.5022, 30.4713],
    [85.7823, 77.4423, 75.5737, 74.8874],
]
RTOL = 1e-3


def reproduce(grid_size: int = 4096) -> bool:
    disk = BallGeometry(2, 1.0, WarpingFunction.euclidean())
    config = SolveConfig(grid_size=grid_size)

    print(f"\n🚀 Ratio table on the unit disk (N={grid_size})\n")
    table = convergence_table(disk, columns=len(REFERENCE), config=config)
    exact = jn_zeros(0, len(REFERENCE)) ** 2

    ok = True
    header = "  ".join(f"𝒯^{j:<10d}" for j in table.orders)
    print(f"      {header}  j_0k²")
    for i, (column, reference) in enumerate(zip(table.columns, REFERENCE)):
        cells = "  ".join(f"{v:<12.6f}" for v in column)
        print(f"φ_{i}   {cells}  {exact[i]:.6f}")
        if not np.allclose(column, reference, rtol=RTOL):
            print(f"  ✗ φ_{i} differs from {reference}")
            ok = False

    disk_sum = whole_spectrum_sum_sq(2, 1.0, MultiplicityMode.SPHERE)
    print()
    print("=" * 60)
    print(f"📊 Σ 1/λ² over the whole disk spectrum: {disk_sum.closed_form:.6f}")
    print(f"{'✅ Table reproduced' if ok else '❌ Table mismatch'}")
    print("=" * 60)
    return ok


if __name__ == "__main__":
    sys.exit(0 if reproduce() else 1)
