"""BCH parity-check columns with no small zero sums.

Column j stacks alpha^j, alpha^{3j}, ..., alpha^{(2t-1)j} (alpha = x), block l
in bits l*s .. l*s+s-1. The augmented variant appends a constant 1 at bit t*s,
so any odd number of columns has nonzero XOR.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .errors import DomainError, IntegrityError
from .gf2 import FieldSpec, gf2m_pow

DEFAULT_EXHAUSTIVE_CAP = 10**7
DEFAULT_SAMPLES = 10**6


@dataclass(frozen=True)
class ColumnSet:
    s: int
    t: int
    parity_augmented: bool
    modulus: int
    columns: tuple[int, ...]

    @property
    def width(self) -> int:
        return self.t * self.s + (1 if self.parity_augmented else 0)

    @property
    def strength(self) -> int:
        """Largest d such that no d or fewer distinct columns XOR to zero."""
        return 2 * self.t + (1 if self.parity_augmented else 0)

    def __len__(self) -> int:
        return len(self.columns)


def build_columns(s: int, t: int, parity_augmented: bool = False) -> ColumnSet:
    if t < 1:
        raise DomainError(f"strength t must be >= 1, got {t}")
    if s < 2:
        raise DomainError(f"field degree s must be >= 2, got {s}")
    f = FieldSpec.standard(s)
    if not 2 * t - 1 < f.order:
        raise DomainError(f"need 2t-1 < 2^s-1, got t={t}, s={s}")
    alpha = 0b10
    cols = []
    for j in range(f.order):
        col = 0
        for l in range(t):
            col |= gf2m_pow(alpha, (2 * l + 1) * j, f) << (l * s)
        if parity_augmented:
            col |= 1 << (t * s)
        cols.append(col)
    return ColumnSet(s, t, parity_augmented, f.modulus, tuple(cols))


@dataclass
class StrengthReport:
    method: str  # "exhaustive" or "sampled"
    max_size: int
    subsets_checked: int
    seed: int | None = None
    violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _exhaustive_numpy(cols: np.ndarray, max_size: int) -> tuple[int, list[tuple[int, ...]]]:
    """XOR of every subset of size 1..max_size, level by level.

    Level d holds the XORs of d-subsets grouped by their smallest index, so
    level d+1 for min index i is ``cols[i] ^ level_d[subsets with min > i]``.
    """
    m = len(cols)
    vals = cols.copy()
    starts = np.arange(m + 1)
    history = [(vals, starts)]
    checked = 0
    for d in range(1, max_size + 1):
        if d > 1:
            prev_vals, prev_starts = history[-1]
            pieces, new_starts = [], [0]
            for i in range(m):
                seg = prev_vals[prev_starts[i + 1]:]
                pieces.append(cols[i] ^ seg)
                new_starts.append(new_starts[-1] + len(seg))
            vals = np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.uint64)
            starts = np.array(new_starts)
            history.append((vals, starts))
        checked += len(vals)
        zeros = np.flatnonzero(vals == 0)
        if len(zeros):
            return checked, [_trace_subset(history, int(p)) for p in zeros[:100]]
    return checked, []


def _trace_subset(history: list[tuple[np.ndarray, np.ndarray]], pos: int) -> tuple[int, ...]:
    subset = []
    for level in range(len(history) - 1, -1, -1):
        _, starts = history[level]
        i = int(np.searchsorted(starts, pos, side="right")) - 1
        subset.append(i)
        if level:
            prev_starts = history[level - 1][1]
            pos = int(prev_starts[i + 1]) + (pos - int(starts[i]))
    return tuple(subset)


def _exhaustive_python(cols: tuple[int, ...], max_size: int) -> tuple[int, list[tuple[int, ...]]]:
    checked, bad = 0, []
    for d in range(1, max_size + 1):
        for sub in combinations(range(len(cols)), d):
            checked += 1
            acc = 0
            for k in sub:
                acc ^= cols[k]
            if acc == 0:
                bad.append(sub)
                if len(bad) >= 100:
                    return checked, bad
    return checked, bad


def _sampled(cs: ColumnSet, max_size: int, samples: int, seed: int) -> list[tuple[int, ...]]:
    m = len(cs.columns)
    rng = np.random.default_rng(seed)
    weights = np.array([comb(m, d) for d in range(1, max_size + 1)], dtype=float)
    sizes = rng.choice(np.arange(1, max_size + 1), size=samples, p=weights / weights.sum())
    wide = cs.width > 64
    cols = (np.array(cs.columns, dtype=object) if wide
            else np.array(cs.columns, dtype=np.uint64))
    bad: list[tuple[int, ...]] = []
    for d in range(1, max_size + 1):
        k = int(np.count_nonzero(sizes == d))
        if not k:
            continue
        idx = rng.integers(0, m, size=(k, d))
        idx.sort(axis=1)
        # redraw rows with repeated indices until all are proper d-subsets
        while d > 1:
            dup = np.any(np.diff(idx, axis=1) == 0, axis=1)
            if not dup.any():
                break
            fresh = rng.integers(0, m, size=(int(dup.sum()), d))
            fresh.sort(axis=1)
            idx[dup] = fresh
        xor = np.bitwise_xor.reduce(cols[idx], axis=1)
        for row in np.flatnonzero(xor == 0)[:100]:
            bad.append(tuple(int(v) for v in idx[row]))
    return bad


def certify_strength(
    cs: ColumnSet,
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
) -> StrengthReport:
    """Check that no 1..strength distinct columns XOR to zero.

    Exhaustive when the subset count fits under ``exhaustive_cap``, otherwise
    ``samples`` uniform random subsets from a fixed seed. Raises
    IntegrityError naming the offending subset on any violation.
    """
    d_max = min(cs.strength, len(cs.columns))
    total = sum(comb(len(cs.columns), d) for d in range(1, d_max + 1))
    if total <= exhaustive_cap:
        if cs.width <= 64:
            checked, bad = _exhaustive_numpy(np.array(cs.columns, dtype=np.uint64), d_max)
        else:
            checked, bad = _exhaustive_python(cs.columns, d_max)
        report = StrengthReport("exhaustive", d_max, checked, None, bad)
    else:
        bad = _sampled(cs, d_max, samples, seed)
        report = StrengthReport("sampled", d_max, samples, seed, bad)
    if bad:
        raise IntegrityError(
            f"columns {bad[0]} of BCH(s={cs.s}, t={cs.t}, augmented={cs.parity_augmented}) XOR to zero"
        )
    return report
