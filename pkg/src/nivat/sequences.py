"""Two-sided integer sequences used to drive singly periodic layers."""
from __future__ import annotations

import numpy as np


def parse_word(text: str) -> tuple[int, ...]:
    """``"0110"`` -> (0, 1, 1, 0); ``"0 -3 12"`` -> (0, -3, 12)."""
    text = text.strip()
    if not text:
        raise ValueError("empty word")
    if any(c.isspace() for c in text):
        return tuple(int(t) for t in text.split())
    return tuple(int(c) for c in text)


def format_word(word) -> str:
    if all(0 <= a <= 9 for a in word):
        return "".join(str(a) for a in word)
    return " ".join(str(a) for a in word)


class Sequence1D:
    """Base class: evaluable at every integer index."""

    def __call__(self, i: int) -> int:
        raise NotImplementedError

    def values(self, lo: int, hi: int) -> np.ndarray:
        """int64 array of ``s(lo), ..., s(hi - 1)``."""
        return np.array([self(i) for i in range(lo, hi)], dtype=np.int64)

    def word(self, lo: int, hi: int) -> list[int]:
        return [self(i) for i in range(lo, hi)]

    def max_abs(self) -> int:
        raise NotImplementedError


class PeriodicWord(Sequence1D):
    def __init__(self, word):
        self.word_ = tuple(int(a) for a in word)
        if not self.word_:
            raise ValueError("empty periodic word")

    def __call__(self, i):
        return self.word_[i % len(self.word_)]

    def values(self, lo, hi):
        idx = np.arange(lo, hi) % len(self.word_)
        return np.array(self.word_, dtype=np.int64)[idx]

    def max_abs(self):
        return max(abs(a) for a in self.word_)

    def __eq__(self, other):
        return isinstance(other, PeriodicWord) and other.word_ == self.word_

    def __hash__(self):
        return hash(("periodic", self.word_))

    def __repr__(self):
        return f"PeriodicWord({format_word(self.word_)!r})"


class EventuallyPeriodic(Sequence1D):
    """``prefix · period^∞`` on indices >= 0.

    Negative indices continue the period to the left, i.e. ``s(i) =
    period[i mod p]`` for ``i < 0``.
    """

    def __init__(self, prefix, period):
        self.prefix = tuple(int(a) for a in prefix)
        self.period = tuple(int(a) for a in period)
        if not self.period:
            raise ValueError("empty period word")

    def __call__(self, i):
        if i < 0:
            return self.period[i % len(self.period)]
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def max_abs(self):
        return max(abs(a) for a in self.prefix + self.period)

    def __eq__(self, other):
        return (
            isinstance(other, EventuallyPeriodic)
            and (other.prefix, other.period) == (self.prefix, self.period)
        )

    def __hash__(self):
        return hash(("eventually", self.prefix, self.period))

    def __repr__(self):
        return f"EventuallyPeriodic({format_word(self.prefix)!r}, {format_word(self.period)!r})"


class Substitution(Sequence1D):
    """Two-sided fixed point of a substitution grown from a seed pair.

    With ``left | right`` the seed, find the least ``k`` such that
    ``sigma^k(right)`` starts with ``right`` and ``sigma^k(left)`` ends with
    ``left``; iterating ``sigma^k`` then grows ``...sigma^{kn}(left) .
    sigma^{kn}(right)...`` outwards from index -1 | 0. Index 0 carries
    ``right`` and index -1 carries ``left``. The result lies in the
    substitution subshift whenever ``left right`` is a legal two-letter word.
    """

    MAX_POWER = 16

    def __init__(self, rules: dict, seed: int, left: int | None = None):
        self.rules = {int(a): tuple(int(b) for b in w) for a, w in rules.items()}
        self.seed = int(seed)
        self.left = self.seed if left is None else int(left)
        for a in (self.seed, self.left):
            if a not in self.rules:
                raise ValueError(f"seed letter {a} has no substitution rule")
        for a, w in self.rules.items():
            if not w:
                raise ValueError(f"rule for {a} is empty")
            for b in w:
                if b not in self.rules:
                    raise ValueError(f"letter {b} has no substitution rule")
        self.power = self._find_power()
        self._right = [self.seed]
        self._left = [self.left]  # stored reversed: _left[j] = s(-1 - j)

    def _apply(self, word, times):
        for _ in range(times):
            out = []
            for a in word:
                out.extend(self.rules[a])
            word = out
        return word

    def _find_power(self):
        for k in range(1, self.MAX_POWER + 1):
            r = self._apply([self.seed], k)
            l = self._apply([self.left], k)
            if r[0] == self.seed and l[-1] == self.left and len(r) > 1 and len(l) > 1:
                return k
        raise ValueError(
            f"seed pair {self.left}|{self.seed} does not grow to a two-sided fixed point"
        )

    def _grow_right(self, n):
        while len(self._right) < n:
            self._right = self._apply(self._right, self.power)

    def _grow_left(self, n):
        while len(self._left) < n:
            word = self._apply(list(reversed(self._left)), self.power)
            self._left = list(reversed(word))

    def __call__(self, i):
        if i >= 0:
            self._grow_right(i + 1)
            return self._right[i]
        j = -1 - i
        self._grow_left(j + 1)
        return self._left[j]

    def values(self, lo, hi):
        if hi <= lo:
            return np.zeros(0, dtype=np.int64)
        if hi > 0:
            self._grow_right(hi)
        if lo < 0:
            self._grow_left(-lo)
        parts = []
        if lo < 0:
            parts.append(self._left[-min(hi, 0):-lo][::-1])
        if hi > 0:
            parts.append(self._right[max(lo, 0):hi])
        return np.array([a for p in parts for a in p], dtype=np.int64)

    def max_abs(self):
        return max(abs(a) for a in self.rules)

    def __eq__(self, other):
        return (
            isinstance(other, Substitution)
            and (other.rules, other.seed, other.left) == (self.rules, self.seed, self.left)
        )

    def __hash__(self):
        return hash(("substitution", tuple(sorted(self.rules.items())), self.seed, self.left))

    def __repr__(self):
        return f"Substitution({self.rules}, seed={self.seed}, left={self.left})"


def thue_morse(left: int = 1) -> Substitution:
    return Substitution({0: (0, 1), 1: (1, 0)}, seed=0, left=left)


def fibonacci(left: int = 1) -> Substitution:
    return Substitution({0: (0, 1), 1: (0,)}, seed=0, left=left)
