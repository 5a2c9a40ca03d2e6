"""Versioned delimited text formats for ideals, labels, features, splits.

Every file starts with `#`-prefixed header lines carrying the format
version and enough model metadata to regenerate the file, so datasets are
self-describing and byte-reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import __version__
from .encoding import FEATURE_COLUMNS, FeatureVector, decode_flat, encode_flat
from .sampler import IdealSample, RandomModel

FORMAT_VERSION = "1"


class DatasetFormatError(ValueError):
    """Malformed or incompatible dataset file."""


@dataclass(frozen=True)
class DatasetHeader:
    format_version: str
    n: int
    d: int
    s: int
    mode: str
    seed: int
    count: int
    tool: str = f"gbpredict {__version__}"

    def lines(self) -> list:
        return [
            f"# format_version: {self.format_version}",
            f"# tool: {self.tool}",
            f"# n: {self.n}",
            f"# d: {self.d}",
            f"# s: {self.s}",
            f"# mode: {self.mode}",
            f"# seed: {self.seed}",
            f"# count: {self.count}",
        ]

    def model(self) -> RandomModel:
        return RandomModel(n=self.n, d=self.d, s=self.s, mode=self.mode, seed=self.seed)


def _parse_header(lines, path) -> DatasetHeader:
    fields = {}
    for line in lines:
        body = line[1:].strip()
        if ":" not in body:
            continue
        key, _, value = body.partition(":")
        fields[key.strip()] = value.strip()
    try:
        header = DatasetHeader(
            format_version=fields["format_version"],
            n=int(fields["n"]),
            d=int(fields["d"]),
            s=int(fields["s"]),
            mode=fields["mode"],
            seed=int(fields["seed"]),
            count=int(fields["count"]),
            tool=fields.get("tool", ""),
        )
    except KeyError as exc:
        raise DatasetFormatError(f"{path}: missing header field {exc}") from exc
    except ValueError as exc:
        raise DatasetFormatError(f"{path}: malformed header field ({exc})") from exc
    if header.format_version != FORMAT_VERSION:
        raise DatasetFormatError(
            f"{path}: format version {header.format_version!r}, "
            f"expected {FORMAT_VERSION!r}"
        )
    return header


def _split_lines(path):
    header_lines, data_lines = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                header_lines.append(line)
            else:
                data_lines.append((lineno, line))
    return header_lines, data_lines


def write_ideals(samples: Sequence[IdealSample], model: RandomModel, path) -> None:
    """One ideal per line: 2*n*s comma-separated exponents, as-given order."""
    header = DatasetHeader(
        format_version=FORMAT_VERSION, n=model.n, d=model.d, s=model.s,
        mode=model.mode, seed=model.seed, count=len(samples),
    )
    with open(path, "w", encoding="utf-8") as fh:
        for line in header.lines():
            fh.write(line + "\n")
        for sample in samples:
            fh.write(",".join(str(v) for v in encode_flat(sample)) + "\n")


def read_ideals(path):
    """Return (samples, header); raises DatasetFormatError with the line
    number on any malformed row."""
    header_lines, data_lines = _split_lines(path)
    header = _parse_header(header_lines, path)
    n, s = header.n, header.s
    samples = []
    for lineno, line in data_lines:
        try:
            values = [int(v) for v in line.split(",")]
            samples.append(decode_flat(values, n, s))
        except ValueError as exc:
            raise DatasetFormatError(f"{path}:{lineno}: {exc}") from exc
    if len(samples) != header.count:
        raise DatasetFormatError(
            f"{path}: header promises {header.count} rows, found {len(samples)}"
        )
    return samples, header


def write_labels(labels: Sequence, path, header: Optional[DatasetHeader] = None) -> None:
    """Rows of `gb_size,gb_max_degree`, aligned with the ideals file."""
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            for line in header.lines():
                fh.write(line + "\n")
        fh.write("gb_size,gb_max_degree\n")
        for size, max_deg in labels:
            fh.write(f"{size},{max_deg}\n")


def read_labels(path):
    _, data_lines = _split_lines(path)
    if not data_lines or data_lines[0][1] != "gb_size,gb_max_degree":
        raise DatasetFormatError(f"{path}: missing gb_size,gb_max_degree header row")
    labels = []
    for lineno, line in data_lines[1:]:
        parts = line.split(",")
        if len(parts) != 2:
            raise DatasetFormatError(f"{path}:{lineno}: expected 2 fields")
        try:
            labels.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise DatasetFormatError(f"{path}:{lineno}: {exc}") from exc
    return labels


def write_quarantine(rows: Sequence, path) -> None:
    """Indices of samples whose labeling exceeded the pair budget."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# quarantined sample indices (pair budget exceeded)\n")
        fh.write("index,pairs_processed\n")
        for index, pairs in rows:
            fh.write(f"{index},{pairs}\n")


def read_quarantine(path):
    _, data_lines = _split_lines(path)
    out = []
    for _, line in data_lines:
        if line.startswith("index,"):
            continue
        index, _, pairs = line.partition(",")
        out.append((int(index), int(pairs)))
    return out


def write_features(rows: Sequence[FeatureVector], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(FEATURE_COLUMNS) + "\n")
        for fv in rows:
            fh.write(",".join(repr(v) for v in fv.as_row()) + "\n")


def read_features(path):
    """Feature rows as lists of floats, in file order."""
    _, data_lines = _split_lines(path)
    if not data_lines or data_lines[0][1] != ",".join(FEATURE_COLUMNS):
        raise DatasetFormatError(f"{path}: missing feature header row")
    return [[float(v) for v in line.split(",")] for _, line in data_lines[1:]]


def split_dataset(n_rows: int, test_fraction: float = 0.2, seed: int = 0):
    """Seeded shuffle-then-partition; returns (train_indices, test_indices)."""
    if n_rows < 1:
        raise ValueError("cannot split an empty dataset")
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must lie strictly between 0 and 1")
    indices = list(range(n_rows))
    random.Random(seed).shuffle(indices)
    n_test = int(round(n_rows * test_fraction))
    return sorted(indices[n_test:]), sorted(indices[:n_test])


def write_indices(indices: Iterable[int], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# row indices, one per line\n")
        for i in indices:
            fh.write(f"{i}\n")


def read_indices(path):
    _, data_lines = _split_lines(path)
    return [int(line) for _, line in data_lines]
