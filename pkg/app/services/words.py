"""Words over {A, B0, B1} encoding the branches of the recursive bound.

Each letter moves the triple (a, b, delta):

    A   -> (a - delta, b - 1, delta)
    B0  -> (a - delta, b, delta)
    B1  -> (a - delta - (b - 1), b - 1, delta - 1)

and a word ends when b reaches 0.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from app.services.bounds import (
    alpha_zero_admissible,
    closed_form_terms,
    leaf_count,
    require_feasible,
)

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


class Letter(str, Enum):
    A = "A"
    B0 = "B0"
    B1 = "B1"

    @property
    def collapsed(self) -> str:
        """Image under B0, B1 -> B."""
        return "A" if self is Letter.A else "B"


def step(state: Triple, letter: Letter) -> Triple:
    a, b, delta = state
    if letter is Letter.A:
        return a - delta, b - 1, delta
    if letter is Letter.B0:
        return a - delta, b, delta
    return a - delta - (b - 1), b - 1, delta - 1


@dataclass(frozen=True)
class Word:
    letters: Tuple[Letter, ...]
    start: Triple
    trace: Tuple[Triple, ...] = field(compare=False)

    @classmethod
    def from_letters(cls, letters: Sequence[Letter], start: Triple) -> "Word":
        trace = []
        state = start
        for letter in letters:
            state = step(state, letter)
            trace.append(state)
        return cls(tuple(letters), start, tuple(trace))

    @property
    def b1_count(self) -> int:
        return sum(1 for x in self.letters if x is Letter.B1)

    @property
    def final(self) -> Triple:
        return self.trace[-1] if self.trace else self.start

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(x.value for x in self.letters) or "ε"


@lru_cache(maxsize=None)
def _suffixes(a: int, b: int, delta: int) -> Tuple[Tuple[Letter, ...], ...]:
    if b == 0:
        return ((),)
    state = (a, b, delta)
    out = [(Letter.A,) + rest for rest in _suffixes(*step(state, Letter.A))]
    b1_child = step(state, Letter.B1)
    branch = Letter.B1
    if alpha_zero_admissible(a, b, delta):
        b0_child = step(state, Letter.B0)
        if leaf_count(*b0_child) >= leaf_count(*b1_child):
            branch = Letter.B0
    out += [(branch,) + rest for rest in _suffixes(*step(state, branch))]
    return tuple(out)


def expand_words(i: int, M: int, a: int, b: int) -> List[Word]:
    """Leaf words of the bound recursion, in lexicographic letter order.

    Every internal state emits an A child and the branch the DP maximum
    picks (B0 when admissible and at least as large, else B1), so the
    number of words equals bound_dp(i, M, a, b).
    """
    delta = require_feasible(i, M, a, b)
    start = (a, b, delta)
    words = [Word.from_letters(letters, start) for letters in _suffixes(a, b, delta)]
    return sorted(words, key=lambda w: [x.value for x in w.letters])


def partition_by_B1(words: Iterable[Word]) -> Dict[int, List[Word]]:
    """W_l: the words with exactly l letters B1."""
    parts: Dict[int, List[Word]] = defaultdict(list)
    for word in words:
        parts[word.b1_count].append(word)
    return dict(sorted(parts.items()))


def placement(word: Word) -> Tuple[int, ...]:
    """1-based positions of the letters A."""
    return tuple(pos for pos, x in enumerate(word.letters, start=1) if x is Letter.A)


def check_nu_injectivity(words: Iterable[Union[Word, Sequence[Letter]]]) -> bool:
    """True iff collapsing B0 and B1 to B keeps the words pairwise distinct."""
    seen = set()
    for word in words:
        letters = word.letters if isinstance(word, Word) else tuple(word)
        image = "".join(Letter(x).collapsed for x in letters)
        if image in seen:
            return False
        seen.add(image)
    return True


@dataclass(frozen=True)
class LevelReport:
    """Checks on one part W_l."""

    l: int
    size: int
    size_bound: int
    max_length: int
    length_bound: Optional[int]
    a_count_ok: bool
    placement_injective: bool

    @property
    def size_margin(self) -> int:
        return self.size_bound - self.size

    @property
    def ok(self) -> bool:
        length_ok = self.length_bound is None or self.max_length <= self.length_bound
        return (
            self.size <= self.size_bound
            and length_ok
            and self.a_count_ok
            and self.placement_injective
        )


@dataclass(frozen=True)
class Lemma21Report:
    state: Tuple[int, int, int, int]
    total: int
    levels: Tuple[LevelReport, ...]
    nu_injective: bool
    terminal_ok: bool

    @property
    def ok(self) -> bool:
        return self.nu_injective and self.terminal_ok and all(r.ok for r in self.levels)

    def failures(self) -> List[str]:
        out = []
        if not self.nu_injective:
            out.append(f"{self.state}: collapsed words collide")
        if not self.terminal_ok:
            out.append(f"{self.state}: a word ends outside b'=0, a'>=0")
        for r in self.levels:
            if not r.ok:
                out.append(
                    f"{self.state} l={r.l}: |W_l|={r.size} (bound {r.size_bound}), "
                    f"max length {r.max_length} (bound {r.length_bound}), "
                    f"A count ok={r.a_count_ok}, placement injective={r.placement_injective}"
                )
        return out


def check_lemma21(i: int, M: int, a: int, b: int) -> Lemma21Report:
    """Binomial size bound and length bound on every W_l of expand_words(i, M, a, b).

    For l < b: |W_l| <= C(A_l, b - l) and every word is at most A_l long;
    for l = b only |W_b| <= 1 is checked.
    """
    delta = require_feasible(i, M, a, b)
    words = expand_words(i, M, a, b)
    parts = partition_by_B1(words)
    A = closed_form_terms(a, b, delta)

    levels = []
    for l in range(b + 1):
        part = parts.get(l, [])
        if l < b:
            size_bound, length_bound = math.comb(A[l], b - l), A[l]
        else:
            size_bound, length_bound = 1, None
        placements = [placement(w) for w in part]
        levels.append(LevelReport(
            l=l,
            size=len(part),
            size_bound=size_bound,
            max_length=max((len(w) for w in part), default=0),
            length_bound=length_bound,
            a_count_ok=all(len(p) == b - l for p in placements),
            placement_injective=len(set(placements)) == len(placements),
        ))

    terminal_ok = all(w.final[1] == 0 and w.final[0] >= 0 for w in words)
    report = Lemma21Report((i, M, a, b), len(words), tuple(levels), check_nu_injectivity(words), terminal_ok)
    if not report.ok:
        logger.warning(f"Word checks failed: {report.failures()}")
    return report


def words_to_json(words: Iterable[Word]) -> List[Dict]:
    return [
        {
            "word": str(w),
            "letters": [x.value for x in w.letters],
            "l": w.b1_count,
            "start": list(w.start),
            "trace": [list(t) for t in w.trace],
        }
        for w in words
    ]
