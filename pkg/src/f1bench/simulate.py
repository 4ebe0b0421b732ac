"""Seeded Monte Carlo engine for season point totals.

One simulated season draws a rank per race from the class's normal
model, rounds it to the nearest integer position in 1..20 and scores
it with the points table for that race format.  Teams draw a
correlated rank pair per race from the bivariate model and score both
cars.

Reproducibility is the organising constraint.  Every uniform deviate
comes from a Philox counter-based generator keyed by

    (master_seed, race_index, driver_index, chunk_index)

where a chunk is a fixed block of ``CHUNK_SIMS`` consecutive
simulation indices.  A season's draws are therefore a pure function of
the seed and its simulation index, so any partitioning of the chunks
across workers (or none) yields bit-identical totals, and a single
season can be replayed in isolation.  Normal deviates are produced by
inverse transform through ``std_normal_quantile``, keeping all
normality on one accuracy-audited path.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .calibration import canonical_scenario, make_params
from .normal import std_normal_quantile
from .probabilities import FULL_RACE_POINTS, SPRINT_POINTS

__all__ = [
    "CHUNK_SIMS", "DEFAULT_SEED", "CATEGORIES", "SCENARIO_SEASONS",
    "SeasonConfig", "SimulationSummary", "round_to_position",
    "simulate_driver_season", "simulate_team_season", "season_totals",
    "summarize", "summarize_all", "rookie_benchmark",
    "sample_positions", "sample_pair_ranks",
    "load_cached_summaries", "store_summaries",
]

CHUNK_SIMS = 1 << 17
DEFAULT_SEED = 2025
# Uniform draws are floored at 2^-53 so the inverse transform never
# sees an exact zero.
_UNIFORM_FLOOR = 2.0 ** -53

CATEGORIES = ("elite_driver", "elite_team", "nonelite_driver", "nonelite_team")

# Season composition (full, sprint) each scenario's benchmarks are
# defined over.  The baseline season runs the full modern calendar of
# 24 grands prix plus 6 sprints; the dominant-manufacturer benchmark
# is defined over a season of 24 race weekends where the 6 sprint
# weekends displace full rounds, giving 18 full races plus 6 sprints.
SCENARIO_SEASONS = {"baseline": (24, 6), "dominant": (18, 6), "rookie": (24, 6)}

_FULL_PTS = np.asarray(FULL_RACE_POINTS, dtype=np.int64)
_SPRINT_PTS = np.asarray(SPRINT_POINTS, dtype=np.int64)

_MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class SeasonConfig:
    """Race counts, simulation size, seed and scenario for one run."""

    races_full: int = 24
    races_sprint: int = 6
    n_sims: int = 1_000_000
    master_seed: int = DEFAULT_SEED
    scenario: str = "baseline"

    def __post_init__(self):
        if self.races_full < 0 or self.races_sprint < 0:
            raise ValueError("race counts must be non-negative")
        if self.n_sims < 1:
            raise ValueError("n_sims must be at least 1")
        if not (isinstance(self.master_seed, int) and 0 <= self.master_seed < _MAX_SEED):
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "scenario", canonical_scenario(self.scenario))

    @property
    def races(self):
        return self.races_full + self.races_sprint


@dataclass(frozen=True)
class SimulationSummary:
    """Mean season points and the empirical 95% interval for a category."""

    category: str
    mean_points: float
    ci_low: float
    ci_high: float
    n_sims: int

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if not self.ci_low <= self.mean_points <= self.ci_high:
            raise ValueError("summary must satisfy ci_low <= mean <= ci_high")

    def as_dict(self):
        return {
            "category": self.category,
            "mean_points": self.mean_points,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "n_sims": self.n_sims,
        }


def _uniform_chunk(master_seed, race, driver, chunk_index, count):
    seq = np.random.SeedSequence(entropy=[master_seed, race, driver, chunk_index])
    gen = np.random.Generator(np.random.Philox(seq))
    return np.maximum(gen.random(count), _UNIFORM_FLOOR)


def _normal_chunk(master_seed, race, driver, chunk_index, count):
    return std_normal_quantile(_uniform_chunk(master_seed, race, driver, chunk_index, count))


def round_to_position(ranks):
    """Round rank draws half away from zero and clamp into 1..20."""
    ranks = np.asarray(ranks, dtype=np.float64)
    nearest = np.where(ranks >= 0.0, np.floor(ranks + 0.5), np.ceil(ranks - 0.5))
    return np.clip(nearest, 1, 20).astype(np.int64)


def _race_points(config, race):
    return _FULL_PTS if race < config.races_full else _SPRINT_PTS


def _driver_chunk(params, driver_class, config, chunk_index, count):
    """Season totals for one chunk of independent driver seasons."""
    mu = params.class_mean(driver_class)
    sigma = params.class_sigma(driver_class)
    totals = np.zeros(count, dtype=np.int64)
    for race in range(config.races):
        z = _normal_chunk(config.master_seed, race, 0, chunk_index, count)
        positions = round_to_position(mu + sigma * z)
        totals += _race_points(config, race)[positions - 1]
    return totals


def _pair_ranks_chunk(params, driver_class, config, race, chunk_index, count):
    """Raw (unrounded) teammate rank pairs for one race."""
    mu = params.class_mean(driver_class)
    sigma = params.class_sigma(driver_class)
    cov = params.class_cov(driver_class)
    if not abs(cov) < sigma * sigma:
        raise ValueError("pair covariance matrix is not positive definite")
    rho = cov / (sigma * sigma)
    z1 = _normal_chunk(config.master_seed, race, 0, chunk_index, count)
    z2 = _normal_chunk(config.master_seed, race, 1, chunk_index, count)
    r1 = mu + sigma * z1
    # conditional factorization of the bivariate normal
    r2 = mu + rho * sigma * z1 + sigma * math.sqrt(1.0 - rho * rho) * z2
    return r1, r2


def _team_chunk(params, driver_class, config, chunk_index, count):
    """Season totals for one chunk of independent team seasons."""
    totals = np.zeros(count, dtype=np.int64)
    for race in range(config.races):
        r1, r2 = _pair_ranks_chunk(params, driver_class, config, race, chunk_index, count)
        points = _race_points(config, race)
        totals += points[round_to_position(r1) - 1]
        totals += points[round_to_position(r2) - 1]
    return totals


def _chunk_spans(n_sims):
    n_chunks = (n_sims + CHUNK_SIMS - 1) // CHUNK_SIMS
    for index in range(n_chunks):
        start = index * CHUNK_SIMS
        yield index, start, min(start + CHUNK_SIMS, n_sims)


def season_totals(category, config, params=None, workers=1):
    """Simulate every season total for a category as an int64 array.

    The result depends only on the category, the configuration and the
    parameters, never on ``workers``: chunks are computed independently
    and written back by index.
    """
    if category not in CATEGORIES:
        raise ValueError(f"unknown category {category!r}; expected one of {CATEGORIES}")
    if params is None:
        params = make_params(config.scenario)
    driver_class, entity = category.rsplit("_", 1)
    chunk_fn = _driver_chunk if entity == "driver" else _team_chunk

    totals = np.empty(config.n_sims, dtype=np.int64)
    spans = list(_chunk_spans(config.n_sims))
    if workers <= 1:
        for index, start, stop in spans:
            totals[start:stop] = chunk_fn(params, driver_class, config, index, stop - start)
    else:
        def run(span):
            index, start, stop = span
            return start, stop, chunk_fn(params, driver_class, config, index, stop - start)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            for start, stop, chunk in pool.map(run, spans):
                totals[start:stop] = chunk
    return totals


def simulate_driver_season(params, driver_class, config, sim_index):
    """Points total of a single simulated driver season.

    Replays exactly the draws that season ``sim_index`` receives inside
    a full ``season_totals`` run.
    """
    _check_sim_index(config, sim_index)
    mu = params.class_mean(driver_class)
    sigma = params.class_sigma(driver_class)
    chunk_index, offset = divmod(sim_index, CHUNK_SIMS)
    total = 0
    for race in range(config.races):
        z = _normal_chunk(config.master_seed, race, 0, chunk_index, offset + 1)[-1]
        position = int(round_to_position(mu + sigma * z)[()])
        total += int(_race_points(config, race)[position - 1])
    return total


def simulate_team_season(params, driver_class, config, sim_index):
    """Points total of a single simulated team season (both cars)."""
    _check_sim_index(config, sim_index)
    chunk_index, offset = divmod(sim_index, CHUNK_SIMS)
    total = 0
    for race in range(config.races):
        r1, r2 = _pair_ranks_chunk(params, driver_class, config, race, chunk_index, offset + 1)
        points = _race_points(config, race)
        total += int(points[int(round_to_position(r1[-1])[()]) - 1])
        total += int(points[int(round_to_position(r2[-1])[()]) - 1])
    return total


def _check_sim_index(config, sim_index):
    if not (isinstance(sim_index, (int, np.integer)) and 0 <= sim_index < config.n_sims):
        raise ValueError(f"sim_index must lie in [0, {config.n_sims})")


def summarize(category, config, params=None, workers=1):
    """Simulate a category and reduce it to a ``SimulationSummary``.

    The mean is the arithmetic mean of the season totals; the interval
    endpoints are the empirical 2.5th and 97.5th percentiles, reported
    as attained sample values (hence integers).
    """
    if config.n_sims < 40:
        raise ValueError("n_sims must be at least 40 for meaningful 95% percentiles")
    totals = season_totals(category, config, params=params, workers=workers)
    low, high = np.percentile(totals, [2.5, 97.5], method="inverted_cdf")
    return SimulationSummary(
        category=category,
        mean_points=float(totals.mean()),
        ci_low=float(low),
        ci_high=float(high),
        n_sims=config.n_sims,
    )


def summarize_all(config, workers=1):
    """Summaries for all four categories as a dict keyed by category."""
    params = make_params(config.scenario)
    return {
        category: summarize(category, config, params=params, workers=workers)
        for category in CATEGORIES
    }


def rookie_benchmark(base):
    """Halve an elite-driver benchmark for a first-season driver.

    A rookie in an elite seat is given a year to bed in, so the season
    target is half the established benchmark: mean and both interval
    endpoints are divided by two, which may yield half-integer bounds.
    """
    if base.category != "elite_driver":
        raise ValueError("the rookie adjustment applies to the elite_driver benchmark only")
    return SimulationSummary(
        category=base.category,
        mean_points=base.mean_points / 2.0,
        ci_low=base.ci_low / 2.0,
        ci_high=base.ci_high / 2.0,
        n_sims=base.n_sims,
    )


def sample_positions(params, driver_class, config, race=0, workers=1):
    """Rounded finishing positions of one race across all simulations.

    Returns an int64 array of length ``config.n_sims`` holding the
    position that each simulated season records in the given race.
    Useful for checking the simulator against the analytic bins.
    """
    mu = params.class_mean(driver_class)
    sigma = params.class_sigma(driver_class)
    _check_race(config, race)
    out = np.empty(config.n_sims, dtype=np.int64)
    for index, start, stop in _chunk_spans(config.n_sims):
        z = _normal_chunk(config.master_seed, race, 0, index, stop - start)
        out[start:stop] = round_to_position(mu + sigma * z)
    return out


def sample_pair_ranks(params, driver_class, config, race=0):
    """Raw teammate rank pairs (r1, r2) of one race across simulations.

    The ranks are returned before rounding, which is the scale on which
    the pair-sum boundary conditions and the within-team correlation
    are defined.
    """
    _check_race(config, race)
    r1 = np.empty(config.n_sims, dtype=np.float64)
    r2 = np.empty(config.n_sims, dtype=np.float64)
    for index, start, stop in _chunk_spans(config.n_sims):
        a, b = _pair_ranks_chunk(params, driver_class, config, race, index, stop - start)
        r1[start:stop] = a
        r2[start:stop] = b
    return r1, r2


def _check_race(config, race):
    if not 0 <= race < config.races:
        raise ValueError(f"race index must lie in [0, {config.races})")


def _cache_key(config):
    return (
        f"seed={config.master_seed},sims={config.n_sims},scenario={config.scenario},"
        f"full={config.races_full},sprint={config.races_sprint}"
    )


def load_cached_summaries(path, config):
    """Load summaries for a configuration from a cache file, or None."""
    if not path or not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    entry = payload.get(_cache_key(config))
    if entry is None:
        return None
    return {
        category: SimulationSummary(**fields)
        for category, fields in entry.items()
    }


def store_summaries(path, config, summaries):
    """Store summaries for a configuration, merging with existing entries."""
    payload = {}
    if os.path.exists(path):
        with open(path, encoding="utf-8") as handle:
            payload = json.load(handle)
    payload[_cache_key(config)] = {
        category: summary.as_dict() for category, summary in summaries.items()
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")
