"""Tokenizer pairs and their soundness checkers.

A tokenizer is an encoder/decoder pair of stochastic maps between a
character space and a token space. The checkers here decide, with exact
arithmetic over the truncated spaces: consistency with respect to a
distribution, exactness, structural classification (determinism,
bijectivity, multiplicativity, trivial kernel, prefix monotonicity),
preimage enumeration with its finiteness bound, marginalization, spurious
ambiguity mass, and the bounded-variation probe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .dist import Dist, point_mass
from .errors import (
    AlphabetMismatch,
    DecoderNotEligible,
    EncoderNotDeterministic,
    NotDeterministic,
    SpaceMismatch,
)
from .reports import ClassificationReport, ProbeReport, Verdict
from .stochmap import StochMap, is_deterministic, pushforward, support_of
from .strings import Str, concat, enumerate_strings, is_prefix, left_distance


@dataclass(eq=False)
class Tokenizer:
    """An encoder from texts to token sequences paired with a decoder back."""

    encoder: StochMap
    decoder: StochMap
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.encoder.cod_space != self.decoder.dom_space:
            raise SpaceMismatch("encoder codomain must equal decoder domain")
        if self.decoder.cod_space.alphabet != self.encoder.dom_space.alphabet:
            raise SpaceMismatch("decoder must map back to the encoder's character alphabet")
        if self.decoder.cod_space.max_len < self.encoder.dom_space.max_len:
            raise SpaceMismatch("decoder output truncation must cover the encoder domain")

    @property
    def char_space(self):
        return self.encoder.dom_space

    @property
    def token_space(self):
        return self.encoder.cod_space


def _roundtrip_row(t: Tokenizer, sigma: Str) -> dict[Str, Fraction]:
    """The distribution of decode(encode(sigma)) as a raw mass map."""
    acc: dict[Str, Fraction] = {}
    for delta, pd in t.encoder.kernel[sigma].mass.items():
        for out, po in t.decoder.kernel[delta].mass.items():
            acc[out] = acc.get(out, Fraction(0)) + pd * po
    return acc


def is_exact(t: Tokenizer) -> Verdict:
    """True iff decode after encode is the identity on every domain string."""
    for sigma in t.char_space.strings():
        row = _roundtrip_row(t, sigma)
        if row != {sigma: Fraction(1)}:
            return Verdict.failed(sigma)
    return Verdict.passed()


def is_consistent_wrt(t: Tokenizer, p: Dist) -> Verdict:
    """True iff pushing p through encode-then-decode returns p exactly.

    The witness is the first string, in canonical order, where the two
    distributions disagree, together with both masses.
    """
    if p.space != t.char_space:
        raise SpaceMismatch("distribution must live over the encoder's domain space")
    r = pushforward(t.decoder, pushforward(t.encoder, p))
    for x in sorted(r.mass.keys() | p.mass.keys(), key=Str.sort_key):
        got, want = r.mass_of(x), p.mass_of(x)
        if got != want:
            return Verdict.failed((x, got, want))
    return Verdict.passed()


def exact_iff_all_consistent_probe(t: Tokenizer, trials: int = 100, seed: int = 0) -> ProbeReport:
    """Probe the equivalence between exactness and universal consistency.

    If the tokenizer is exact, consistency is checked against `trials`
    random distributions plus every point mass of the domain space. If it
    is not, the first string moved by the round trip yields a point-mass
    distribution that is demonstrably inconsistent.
    """
    exact = is_exact(t)
    space = t.char_space
    if exact:
        rng = random.Random(seed)
        for _ in range(trials):
            p = _random_dist(space, rng)
            v = is_consistent_wrt(t, p)
            if not v:
                return ProbeReport(True, trials, False, p, "random distribution not preserved")
        for x in space.strings():
            v = is_consistent_wrt(t, point_mass(x, space))
            if not v:
                return ProbeReport(True, trials, False, x, "point mass not preserved")
        return ProbeReport(True, trials, True)
    sigma = exact.witness
    inconsistent = not is_consistent_wrt(t, point_mass(sigma, space))
    return ProbeReport(False, 0, inconsistent, sigma)


def _random_dist(space, rng: random.Random, max_support: int = 6) -> Dist:
    pool = list(space.strings())
    k = rng.randint(1, min(max_support, len(pool)))
    support = rng.sample(pool, k)
    weights = [rng.randint(1, 9) for _ in support]
    total = sum(weights)
    return Dist(space, {s: Fraction(w, total) for s, w in zip(support, weights)})


def _decoder_values(decoder: StochMap) -> dict[Str, Str] | None:
    """Point values of a deterministic decoder, or None if any row is stochastic."""
    values = {}
    for x, row in decoder.kernel.items():
        if len(row.mass) != 1:
            return None
        values[x] = next(iter(row.mass))
    return values


def _multiplicative_verdict(decoder: StochMap, values: dict[Str, Str] | None) -> Verdict:
    if values is None:
        return Verdict.not_applicable("decoder is stochastic")
    m = decoder.dom_space.max_len
    if m < 2:
        return Verdict.not_applicable("truncation admits no nonempty concatenation")
    alpha = decoder.dom_space.alphabet
    for left in enumerate_strings(alpha, m):
        for right in enumerate_strings(alpha, m - len(left)):
            joined = concat(left, right)
            if values[joined] != concat(values[left], values[right]):
                return Verdict.failed((left, right))
    return Verdict.passed()


def _trivial_kernel_verdict(decoder: StochMap, values: dict[Str, Str] | None) -> Verdict:
    if values is None:
        return Verdict.not_applicable("decoder is stochastic")
    alpha = decoder.dom_space.alphabet
    for i in range(len(alpha)):
        token = Str(alpha, (i,))
        if len(values[token]) == 0:
            return Verdict.failed(token, "token decodes to the empty string")
    return Verdict.passed()


def _prefix_monotone_verdict(decoder: StochMap, values: dict[Str, Str] | None) -> Verdict:
    if values is None:
        return Verdict.not_applicable("decoder is stochastic")
    alpha = decoder.dom_space.alphabet
    for delta in decoder.dom_space.strings():
        out = values[delta]
        for i in range(len(delta)):
            prefix = Str(alpha, delta.syms[:i])
            if not is_prefix(values[prefix], out):
                return Verdict.failed((prefix, delta))
    return Verdict.passed()


def classify(t: Tokenizer) -> ClassificationReport:
    """Structural report: determinism, bijectivity, multiplicativity, kernel, monotonicity."""
    det_enc = is_deterministic(t.encoder)
    det_dec = is_deterministic(t.decoder)
    exact = is_exact(t)
    if det_enc and exact:
        bijective = Verdict.passed()
    elif not det_enc:
        bijective = Verdict.failed(det_enc.witness, "encoder is stochastic")
    else:
        bijective = Verdict.failed(exact.witness, "not exact")
    values = _decoder_values(t.decoder)
    return ClassificationReport(
        deterministic_encoder=det_enc,
        deterministic_decoder=det_dec,
        bijective=bijective,
        multiplicative_decoder=_multiplicative_verdict(t.decoder, values),
        trivial_kernel=_trivial_kernel_verdict(t.decoder, values),
        prefix_monotone=_prefix_monotone_verdict(t.decoder, values),
    )


def decoder_eligibility(t: Tokenizer) -> Verdict:
    """Eligibility of the decoder for preimage enumeration (cached per tokenizer).

    Requires a deterministic decoder that is multiplicative with a trivial
    kernel over its truncated domain.
    """
    cached = t._cache.get("eligibility")
    if cached is not None:
        return cached
    values = _decoder_values(t.decoder)
    if values is None:
        verdict = Verdict.failed(None, "decoder is stochastic")
    else:
        mult = _multiplicative_verdict(t.decoder, values)
        triv = _trivial_kernel_verdict(t.decoder, values)
        if not mult:
            verdict = Verdict.failed(mult.witness, f"multiplicativity: {mult.describe()}")
        elif not triv:
            verdict = Verdict.failed(triv.witness, f"trivial kernel: {triv.describe()}")
        else:
            verdict = Verdict.passed()
            alpha = t.token_space.alphabet
            t._cache["spellings"] = [values[Str(alpha, (i,))] for i in range(len(alpha))]
    t._cache["eligibility"] = verdict
    return verdict


def preimages(t: Tokenizer, sigma: Str) -> list[Str]:
    """All token sequences in the decoder's domain that decode to sigma.

    Depth-first search over token spellings, exploring only tokens whose
    spelling prefixes the remaining suffix. Eligibility of the decoder
    guarantees every preimage is at most |sigma| tokens long, so the search
    is complete within the truncation. Results in canonical order.
    """
    verdict = decoder_eligibility(t)
    if not verdict:
        raise DecoderNotEligible(verdict.note or "decoder not eligible")
    if sigma.alphabet != t.char_space.alphabet:
        raise AlphabetMismatch("input text is not over the decoder's output alphabet")
    spellings = [s.syms for s in t._cache["spellings"]]
    token_alpha = t.token_space.alphabet
    max_tokens = min(len(sigma), t.token_space.max_len)
    target = sigma.syms
    found: list[Str] = []
    stack: list[int] = []

    def walk(pos: int) -> None:
        if pos == len(target):
            found.append(Str(token_alpha, tuple(stack)))
            return
        if len(stack) >= max_tokens:
            return
        for j, sp in enumerate(spellings):
            if target[pos : pos + len(sp)] == sp:
                stack.append(j)
                walk(pos + len(sp))
                stack.pop()

    walk(0)
    found.sort(key=Str.sort_key)
    return found


def preimage_bound(n: int, vocab_size: int) -> int:
    """Upper bound on the number of preimages of a length-n text: sum of |vocab|^i, i=1..n.

    The empty text is not covered by the bound (its only preimage under an
    eligible decoder is the empty token sequence).
    """
    if n < 0:
        raise ValueError("length must be >= 0")
    return sum(vocab_size**i for i in range(1, n + 1))


def marginalize(t: Tokenizer, q: Dist, sigma: Str) -> Fraction:
    """Total mass q places on token sequences decoding to sigma."""
    if q.space != t.token_space:
        raise SpaceMismatch("distribution must live over the token space")
    return sum((q.mass_of(delta) for delta in preimages(t, sigma)), Fraction(0))


def spurious_ambiguity_mass(t: Tokenizer, q: Dist) -> Fraction:
    """Mass q places outside the image of a deterministic encoder."""
    if not is_deterministic(t.encoder):
        raise EncoderNotDeterministic("spurious ambiguity is defined for deterministic encoders")
    if q.space != t.token_space:
        raise SpaceMismatch("distribution must live over the token space")
    image = support_of(t.encoder)
    return sum((m for delta, m in q.mass.items() if delta not in image), Fraction(0))


def bounded_variation_probe(f: StochMap, k: int) -> tuple[int, tuple[Str, Str]]:
    """Largest output distance over all domain pairs within input distance k.

    Exhaustive at desk scale: pairs are enumerated as a shared prefix plus
    two suffixes of total length at most k that diverge immediately, which
    covers each qualifying pair exactly once.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    values = _decoder_values(f)
    if values is None:
        raise NotDeterministic("bounded variation probe requires a deterministic map")
    alpha = f.dom_space.alphabet
    m = f.dom_space.max_len
    suffixes = _strings_by_length(alpha, min(k, m))
    first = f.dom_space.empty()
    best, witness = 0, (first, first)
    for c in f.dom_space.strings():
        budget = min(k, m - len(c))
        for lu in range(budget + 1):
            max_lv = min(budget, k - lu)
            for u in suffixes[lu]:
                gamma_u = concat(c, u)
                out_u = values[gamma_u]
                for lv in range(lu, max_lv + 1):
                    for v in suffixes[lv]:
                        if lu == 0 and lv == 0:
                            continue
                        if lu and lv:
                            if u.syms[0] == v.syms[0]:
                                continue  # counted under the longer shared prefix
                            if lu == lv and v.syms < u.syms:
                                continue  # unordered pairs once
                        gamma_v = concat(c, v)
                        d = left_distance(out_u, values[gamma_v])
                        if d > best:
                            best, witness = d, (gamma_u, gamma_v)
    return best, witness


def _strings_by_length(alphabet, up_to: int):
    buckets: list[list[Str]] = [[] for _ in range(up_to + 1)]
    for s in enumerate_strings(alphabet, up_to):
        buckets[len(s)].append(s)
    return buckets
