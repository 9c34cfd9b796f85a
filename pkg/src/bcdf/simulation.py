"""
Monte Carlo study of the integrated squared error of the classical and boundary-corrected estimators.

Every replicate draws its own sample from a stream derived from (master seed, replicate index) and writes into
its own result slot, so results do not depend on the number of threads or on the number of replicates run.

MIT License
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.integrate import simpson

from .analysis import optimal_bandwidth
from .constants import classical_name, default_n, default_reps, default_seed, ise_panels_per_unit
from .distributions import Distribution, draw_sample, replicate_stream
from .estimator import EstimatorConfig, Sample, evaluate_grid
from .kernels import BaseKernel, BoundaryKernelFamily
from .utils import get_version_from_pyproject, uniform_grid

logger = logging.getLogger(__name__)

EstimatorName = Literal['classical', 'k1', 'k2', 'k3']

_SUMMARY_COLUMNS = ['min', 'q1', 'median', 'q3', 'max', 'mean']


class Region(BaseModel):
    """A closed interval [lo, hi] over which the squared error is integrated."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    name: str | None = None

    @model_validator(mode='after')
    def _check_order(self) -> 'Region':
        if not self.lo <= self.hi:
            raise ValueError(f'region must satisfy lo <= hi, got [{self.lo}, {self.hi}]')
        return self

    @property
    def label(self) -> str:
        return self.name if self.name is not None else f'{self.lo!r}:{self.hi!r}'


class SimConfig(BaseModel):
    """
    Settings of an ISE study.

    ``h='optimal'`` uses the asymptotically MISE optimal bandwidth of ``dist``. A resolved bandwidth wider than
    half the support is rejected at construction. Without explicit ``regions`` the left strip [a, a + h], the
    right strip [b - h, b] and the whole support are used.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dist: Distribution
    n: int = Field(default=default_n, ge=1)
    reps: int = Field(default=default_reps, ge=1)
    seed: int = Field(default=default_seed, ge=0, lt=2**64)
    base: BaseKernel = BaseKernel()
    families: tuple[EstimatorName, ...] = ('classical', 'k1', 'k2', 'k3')
    h: float | Literal['optimal'] = 'optimal'
    regions: tuple[Region, ...] | None = None

    @field_validator('families')
    @classmethod
    def _families_not_empty(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if not value:
            raise ValueError('at least one estimator is needed')
        if len(set(value)) != len(value):
            raise ValueError(f'estimators are listed more than once: {value}')
        return value

    @model_validator(mode='after')
    def _check_regions(self) -> 'SimConfig':
        a, b = self.dist.support
        for region in self.regions or ():
            if not a <= region.lo <= region.hi <= b:
                raise ValueError(f'region [{region.lo}, {region.hi}] is not contained in the support [{a}, {b}]')
        h = self.bandwidth()
        if not 0.0 < h <= (b - a) / 2:
            source = f'optimal bandwidth h0 of {self.dist} at n={self.n}' if self.h == 'optimal' else 'bandwidth'
            raise ValueError(f'{source} must satisfy 0 < h <= (b - a)/2 = {(b - a) / 2}, got {h}')
        return self

    def bandwidth(self) -> float:
        """The bandwidth used by every estimator of the study."""
        if self.h == 'optimal':
            return optimal_bandwidth(self.dist, self.base, self.n)
        return float(self.h)

    def resolved_regions(self, h: float) -> tuple[Region, ...]:
        if self.regions is not None:
            return self.regions
        a, b = self.dist.support
        return (
            Region(lo=a, hi=a + h, name='left'),
            Region(lo=b - h, hi=b, name='right'),
            Region(lo=a, hi=b, name='full'),
        )

    def estimator(self, name: str, h: float) -> EstimatorConfig:
        a, b = self.dist.support
        family = None if name == classical_name else BoundaryKernelFamily(name, self.base)  # type: ignore[arg-type]
        return EstimatorConfig(a=a, b=b, h=h, base=self.base, family=family)

    def echo(self) -> dict[str, Any]:
        """Plain description of the configuration, for provenance."""
        return {
            'dist': repr(self.dist),
            'n': self.n,
            'reps': self.reps,
            'seed': self.seed,
            'kernel': self.base.name,
            'families': list(self.families),
            'h': self.h,
            'regions': None if self.regions is None else [(r.lo, r.hi) for r in self.regions],
        }


@dataclass(frozen=True, eq=False)
class SimResult:
    """
    Per (replicate, estimator, region) integrated squared errors of one study.

    Attributes:
        records: long table with columns replicate, family, region, lo, hi, ise
        seed: master seed of the random streams
        h: bandwidth used
        version: version of the package that produced the result
        config: echo of the configuration
    """

    records: pd.DataFrame
    seed: int
    h: float
    version: str | None
    config: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        assert (self.records['ise'] >= 0.0).all(), 'integrated squared errors must be nonnegative'

    def to_frame(self) -> pd.DataFrame:
        """The long-format table ``replicate, family, region, ise``."""
        return self.records[['replicate', 'family', 'region', 'ise']].copy()


def integrated_squared_error(sample: Sample, cfg: EstimatorConfig, dist: Distribution, region: Region) -> float:
    """
    int_region (F_est - F)^2 dx by the composite Simpson rule on a uniform grid.

    The grid has an even number of panels, about ``ise_panels_per_unit`` per unit length, and its end points are
    exactly the region end points.
    """
    if region.lo == region.hi:
        return 0.0
    panels = max(2, math.ceil(ise_panels_per_unit * (region.hi - region.lo)))
    panels += panels % 2
    grid = uniform_grid(region.lo, region.hi, panels + 1)
    error = evaluate_grid(sample, cfg, grid) - np.asarray(dist.cdf(grid), dtype=np.float64)
    return max(0.0, float(simpson(error**2, x=grid)))


def _replicate(
    cfg: SimConfig, replicate: int, estimators: dict[str, EstimatorConfig], regions: tuple[Region, ...]
) -> list[dict[str, Any]]:
    sample = draw_sample(cfg.dist, replicate_stream(cfg.seed, replicate), cfg.n)
    rows = []
    for name, estimator in estimators.items():
        for region in regions:
            rows.append(
                {
                    'replicate': replicate,
                    'family': name,
                    'region': region.label,
                    'lo': region.lo,
                    'hi': region.hi,
                    'ise': integrated_squared_error(sample, estimator, cfg.dist, region),
                }
            )
    return rows


def run_ise(cfg: SimConfig, threads: int = 1, log_frequency: int = 50) -> SimResult:
    """
    Run the study: for every replicate, every estimator and every region, one integrated squared error.

    Parameters
    ----------
    cfg : SimConfig
        Study settings.
    threads : int
        Number of worker threads. The result is identical for any value.
    log_frequency : int
        Log progress every ``log_frequency`` replicates.

    Returns
    -------
    SimResult
        ``cfg.reps * len(cfg.families) * len(regions)`` records.
    """
    if threads < 1:
        raise ValueError(f'threads must be at least 1, not {threads}')
    h = cfg.bandwidth()
    regions = cfg.resolved_regions(h)
    estimators = {name: cfg.estimator(name, h) for name in cfg.families}
    logger.info(
        f'ISE study: {cfg.dist}, n={cfg.n}, reps={cfg.reps}, h={h}, kernel={cfg.base.name}, '
        f'estimators={list(cfg.families)}, regions={[r.label for r in regions]}'
    )

    slots: list[list[dict[str, Any]]] = [[] for _ in range(cfg.reps)]

    def fill(replicate: int) -> None:
        slots[replicate] = _replicate(cfg, replicate, estimators, regions)
        if (replicate + 1) % log_frequency == 0:
            logger.info(f'Replicate={replicate + 1}/{cfg.reps}')

    if threads == 1:
        for replicate in range(cfg.reps):
            fill(replicate)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, range(cfg.reps)))

    records = pd.DataFrame([row for rows in slots for row in rows])
    assert len(records) == cfg.reps * len(estimators) * len(regions), 'missing simulation records'
    return SimResult(records=records, seed=cfg.seed, h=h, version=get_version_from_pyproject(), config=cfg.echo())


def summarize(res: SimResult) -> pd.DataFrame:
    """Boxplot statistics (min, q1, median, q3, max, mean) of the ISE per estimator and region."""
    grouped = res.records.groupby(['family', 'region'], sort=False)['ise']
    summary = pd.DataFrame(
        {
            'min': grouped.min(),
            'q1': grouped.quantile(0.25),
            'median': grouped.median(),
            'q3': grouped.quantile(0.75),
            'max': grouped.max(),
            'mean': grouped.mean(),
        }
    )
    return summary.reset_index()[['family', 'region', *_SUMMARY_COLUMNS]]
