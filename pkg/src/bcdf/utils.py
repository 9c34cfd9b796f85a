import re
import pathlib
import logging
from typing import Optional

import numpy as np
import numpy.typing as npt

logger = logging.getLogger(__name__)

FloatArray = npt.NDArray[np.float64]


def get_version_from_pyproject(pyproject_path: Optional[str] = None) -> Optional[str]:
    """Parse the version string from pyproject.toml."""
    if pyproject_path is None:
        path = pathlib.Path(__file__).parent.parent.parent / 'pyproject.toml'
    else:
        path = pathlib.Path(pyproject_path)
    version = None
    if path.exists():
        with open(path) as f:
            for line in f:
                m = re.match(r'version\s*=\s*[\'"]([^\'"]+)[\'"]', line)
                if m:
                    version = m.group(1)
                    break
    return version


def as_float_array(values: float | npt.ArrayLike) -> FloatArray:
    """Return ``values`` as a float64 numpy array (0-d for scalars)."""
    return np.asarray(values, dtype=np.float64)


def unwrap_scalar(values: npt.ArrayLike, *like: float | npt.ArrayLike) -> float | FloatArray:
    """
    Return a python float when every argument in ``like`` was a scalar, a float array otherwise.

    Every vectorised evaluation in the package goes through this so that scalar callers get scalars back.
    """
    if all(np.ndim(item) == 0 for item in like):
        return float(values)  # type: ignore[arg-type]
    return np.asarray(values, dtype=np.float64)


def uniform_grid(lo: float, hi: float, m: int) -> FloatArray:
    """``m`` equally spaced points on ``[lo, hi]`` with both endpoints exact."""
    if m < 1:
        raise ValueError(f'grid size must be at least 1, not {m}')
    if m == 1:
        return np.array([lo], dtype=np.float64)
    grid = np.linspace(lo, hi, m)
    grid[0], grid[-1] = lo, hi
    return grid
