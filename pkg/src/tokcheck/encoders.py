"""Concrete tokenizer constructions: greedy longest-match, merge-based, uniform.

A vocabulary binds each token to a nonempty spelling over the character
alphabet. The decoder shared by all constructions concatenates spellings.
No normalization or whitespace handling happens here: out-of-vocabulary
input is a hard error unless an explicit lossy unknown-token fallback is
requested, which deliberately sacrifices round-trip exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dist import Dist
from .errors import (
    MissingBaseCharacter,
    NoMatchingPrefix,
    NoSegmentation,
    TruncationOverflow,
    VocabNotOpen,
)
from .stochmap import StochMap, materialize
from .strings import TOKENS, Alphabet, Space, Str, parse_str
from .tokenizer import Tokenizer


@dataclass(frozen=True)
class Vocab:
    """Ordered token entries, each a (token label, spelling) pair.

    Spellings are nonempty strings over the character alphabet; labels and
    spellings are each pairwise distinct. The vocabulary is open when every
    single character appears as a spelling, which guarantees greedy
    encoding always finds a match.
    """

    sigma: Alphabet
    entries: tuple[tuple[str, Str], ...]
    delta: Alphabet = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("vocabulary must be nonempty")
        labels = [label for label, _ in self.entries]
        spellings = [sp for _, sp in self.entries]
        if len(set(labels)) != len(labels):
            raise ValueError("token labels must be distinct")
        for sp in spellings:
            if sp.alphabet != self.sigma:
                raise ValueError("every spelling must be over the character alphabet")
            if len(sp) == 0:
                raise ValueError("spellings must be nonempty")
        if len(set(sp.syms for sp in spellings)) != len(spellings):
            raise ValueError("spellings must be distinct")
        object.__setattr__(self, "delta", Alphabet(tuple(labels), TOKENS))

    @classmethod
    def from_texts(cls, sigma: Alphabet, pairs: Sequence[tuple[str, str]]) -> "Vocab":
        return cls(sigma, tuple((label, parse_str(sigma, sp)) for label, sp in pairs))

    def spelling(self, token_index: int) -> Str:
        return self.entries[token_index][1]

    def spellings(self) -> list[Str]:
        return [sp for _, sp in self.entries]

    def token_by_spelling(self, syms: tuple[int, ...]) -> int | None:
        for i, (_, sp) in enumerate(self.entries):
            if sp.syms == syms:
                return i
        return None

    @property
    def is_open(self) -> bool:
        singles = {sp.syms[0] for _, sp in self.entries if len(sp) == 1}
        return len(singles) == len(self.sigma)

    @property
    def max_spelling_len(self) -> int:
        return max(len(sp) for _, sp in self.entries)


@dataclass(frozen=True)
class MergeList:
    """Ordered merge rules; each concatenated pair must spell some vocab entry."""

    pairs: tuple[tuple[Str, Str], ...]

    @classmethod
    def from_texts(cls, vocab: Vocab, pairs: Sequence[tuple[str, str]]) -> "MergeList":
        parsed = tuple(
            (parse_str(vocab.sigma, left), parse_str(vocab.sigma, right)) for left, right in pairs
        )
        merged = cls(parsed)
        merged.validate(vocab)
        return merged

    def validate(self, vocab: Vocab) -> None:
        for left, right in self.pairs:
            if vocab.token_by_spelling(left.syms + right.syms) is None:
                raise ValueError(
                    f"merge ({left.render()}, {right.render()}) does not spell any vocab entry"
                )


def decode_tokens(vocab: Vocab, delta: Str) -> Str:
    """Concatenate the spellings of a token sequence."""
    syms: list[int] = []
    for j in delta.syms:
        syms.extend(vocab.spelling(j).syms)
    return Str(vocab.sigma, syms)


def concat_decoder(vocab: Vocab, max_tokens: int, out_max_len: int | None = None) -> StochMap:
    """The deterministic concatenating decoder over token sequences of length <= max_tokens.

    The output truncation defaults to max_tokens times the longest spelling,
    the largest length a decoded sequence can reach; a tighter explicit
    bound raises TruncationOverflow if any sequence decodes past it.
    """
    reach = max_tokens * vocab.max_spelling_len
    if out_max_len is None:
        out_max_len = reach
    elif out_max_len < reach:
        longest = max(vocab.spellings(), key=len)
        raise TruncationOverflow(
            f"{max_tokens} copies of the longest spelling {longest.render()!r} decode to "
            f"length {reach} > truncation {out_max_len}"
        )
    dom = Space(vocab.delta, max_tokens)
    cod = Space(vocab.sigma, out_max_len)
    return materialize(lambda delta: decode_tokens(vocab, delta), dom, cod)


def maximal_munch_encode(vocab: Vocab, sigma: Str, unk_token: str | None = None) -> Str:
    """Greedy encoding: repeatedly consume the longest spelling prefixing the rest.

    The longest match is unique because spellings are distinct. With
    unk_token set, a position no spelling matches consumes one character
    and emits that token (a lossy fallback that breaks exactness);
    otherwise such a position is an error.
    """
    if sigma.alphabet != vocab.sigma:
        raise ValueError("input is not over the vocabulary's character alphabet")
    unk_index = None
    if unk_token is not None:
        unk_index = vocab.delta.index(unk_token)
    text = sigma.syms
    out: list[int] = []
    pos = 0
    while pos < len(text):
        best = None
        best_len = 0
        for j, (_, sp) in enumerate(vocab.entries):
            n = len(sp.syms)
            if n > best_len and text[pos : pos + n] == sp.syms:
                best, best_len = j, n
        if best is None:
            if unk_index is None:
                raise NoMatchingPrefix(pos)
            out.append(unk_index)
            pos += 1
        else:
            out.append(best)
            pos += best_len
    return Str(vocab.delta, out)


def bpe_encode(vocab: Vocab, merges: MergeList, sigma: Str) -> Str:
    """Merge-based encoding: start from characters, apply merges in list order.

    Each merge replaces adjacent occurrences of its pair leftmost-first
    without overlap, repeating until none remain, before the next rule
    applies. The within-merge order is this library's convention; outputs
    are deterministic given the rule list.
    """
    if sigma.alphabet != vocab.sigma:
        raise ValueError("input is not over the vocabulary's character alphabet")
    seq: list[int] = []
    for c in sigma.syms:
        j = vocab.token_by_spelling((c,))
        if j is None:
            raise MissingBaseCharacter(
                f"character {vocab.sigma.labels[c]!r} has no single-character vocab entry"
            )
        seq.append(j)
    for left, right in merges.pairs:
        merged = vocab.token_by_spelling(left.syms + right.syms)
        while True:
            out: list[int] = []
            i = 0
            changed = False
            while i < len(seq):
                if (
                    i + 1 < len(seq)
                    and vocab.spelling(seq[i]).syms == left.syms
                    and vocab.spelling(seq[i + 1]).syms == right.syms
                ):
                    out.append(merged)
                    i += 2
                    changed = True
                else:
                    out.append(seq[i])
                    i += 1
            seq = out
            if not changed:
                break
    return Str(vocab.delta, seq)


def segmentations(vocab: Vocab, sigma: Str) -> list[Str]:
    """All token sequences whose spellings concatenate to sigma, canonically ordered."""
    target = sigma.syms
    found: list[Str] = []
    stack: list[int] = []

    def walk(pos: int) -> None:
        if pos == len(target):
            found.append(Str(vocab.delta, tuple(stack)))
            return
        for j, (_, sp) in enumerate(vocab.entries):
            n = len(sp.syms)
            if target[pos : pos + n] == sp.syms:
                stack.append(j)
                walk(pos + n)
                stack.pop()

    walk(0)
    found.sort(key=Str.sort_key)
    return found


def uniform_segmenter(vocab: Vocab, sigma: Str) -> Dist:
    """Uniform distribution over every segmentation of sigma, over token sequences of length <= |sigma|."""
    segs = segmentations(vocab, sigma)
    if not segs:
        raise NoSegmentation(f"no segmentation of {sigma.render()!r}")
    share = Fraction(1, len(segs))
    return Dist(Space(vocab.delta, len(sigma)), {s: share for s in segs})


def munch_tokenizer(vocab: Vocab, max_len: int, unk_token: str | None = None) -> Tokenizer:
    """Greedy encoder over texts of length <= max_len with the concatenating decoder."""
    if unk_token is None and not vocab.is_open:
        raise VocabNotOpen("greedy encoding over the full space needs an open vocabulary")
    char_space = Space(vocab.sigma, max_len)
    token_space = Space(vocab.delta, max_len)
    encoder = materialize(
        lambda s: maximal_munch_encode(vocab, s, unk_token), char_space, token_space
    )
    return Tokenizer(encoder, concat_decoder(vocab, max_len))


def bpe_tokenizer(vocab: Vocab, merges: MergeList, max_len: int) -> Tokenizer:
    """Merge-based encoder over texts of length <= max_len with the concatenating decoder."""
    char_space = Space(vocab.sigma, max_len)
    token_space = Space(vocab.delta, max_len)
    encoder = materialize(lambda s: bpe_encode(vocab, merges, s), char_space, token_space)
    return Tokenizer(encoder, concat_decoder(vocab, max_len))


def uniform_tokenizer(vocab: Vocab, max_len: int) -> Tokenizer:
    """Stochastic encoder spreading mass uniformly over all segmentations."""
    char_space = Space(vocab.sigma, max_len)
    token_space = Space(vocab.delta, max_len)
    encoder = materialize(lambda s: uniform_segmenter(vocab, s), char_space, token_space)
    return Tokenizer(encoder, concat_decoder(vocab, max_len))
