"""Fan-out labeling and featurization over a worker pool.

Work is keyed by sample index and merged back in index order, so results
are identical for any worker count.  Samples whose Buchberger run exceeds
the pair budget are quarantined, never mislabeled.
"""

from __future__ import annotations

import multiprocessing
import os
from typing import Optional, Sequence

from .encoding import compute_features, decode_flat, encode_flat
from .groebner import BuchbergerOptions, BudgetExceededError, buchberger
from .sampler import IdealSample

WORKERS_ENV_VAR = "GBPREDICT_WORKERS"


def default_workers() -> int:
    value = os.environ.get(WORKERS_ENV_VAR)
    if value:
        return max(1, int(value))
    return 1


def _reduced_basis(sample: IdealSample, max_pairs: Optional[int]):
    gens = [g.to_polynomial() for g in sample.gens]
    opts = BuchbergerOptions(max_pairs=max_pairs)
    return buchberger(gens, opts)


def _label_task(args):
    index, flat, n, s, max_pairs = args
    sample = decode_flat(flat, n, s)
    try:
        result = _reduced_basis(sample, max_pairs)
    except BudgetExceededError as exc:
        return index, None, exc.pairs_processed
    return index, (result.cardinality, result.max_total_degree), None


def _feature_task(args):
    index, flat, n, s, max_pairs = args
    sample = decode_flat(flat, n, s)
    try:
        result = _reduced_basis(sample, max_pairs)
    except BudgetExceededError as exc:
        return index, None, exc.pairs_processed
    lead = [g.leading_monomial for g in result.basis]
    return index, compute_features(sample, lead).as_row(), None


def _run_tasks(task, samples: Sequence[IdealSample], max_pairs, workers):
    n = samples[0].n if samples else 0
    jobs = [
        (i, encode_flat(sample), sample.n, len(sample.gens), max_pairs)
        for i, sample in enumerate(samples)
    ]
    if workers <= 1:
        results = [task(job) for job in jobs]
    else:
        with multiprocessing.Pool(processes=workers) as pool:
            results = pool.map(task, jobs, chunksize=max(1, len(jobs) // (workers * 8)))
    results.sort(key=lambda r: r[0])
    good, quarantine = [], []
    for index, payload, pairs in results:
        if payload is None:
            quarantine.append((index, pairs))
            good.append(None)
        else:
            good.append(payload)
    return good, quarantine


def label_samples(samples: Sequence[IdealSample], max_pairs: Optional[int] = None,
                  workers: int = 1):
    """(labels, quarantine): labels[i] is (gb_size, gb_max_degree) or None
    if sample i is quarantined as (index, pairs_processed)."""
    return _run_tasks(_label_task, samples, max_pairs, workers)


def featurize_samples(samples: Sequence[IdealSample], max_pairs: Optional[int] = None,
                      workers: int = 1):
    """(feature_rows, quarantine), aligned like label_samples."""
    return _run_tasks(_feature_task, samples, max_pairs, workers)
