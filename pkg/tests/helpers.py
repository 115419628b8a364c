"""Shared constructions for the test suite: fixtures' guts and random generators."""

from fractions import Fraction

import tokcheck as tk


def dist_from(space, items):
    """Build a Dist from {rendered string: mass} with parsed keys."""
    return tk.Dist(
        space, {tk.parse_str(space.alphabet, text): Fraction(m) for text, m in items.items()}
    )


def table_map(dom_space, cod_space, rows):
    """Build a StochMap from {input: output} or {input: {output: mass}} rendered labels."""
    kernel = {}
    for text, out in rows.items():
        x = tk.parse_str(dom_space.alphabet, text)
        if isinstance(out, str):
            kernel[x] = tk.point_mass(tk.parse_str(cod_space.alphabet, out), cod_space)
        else:
            kernel[x] = dist_from(cod_space, out)
    return tk.StochMap(dom_space, cod_space, kernel)


def fig1_pieces():
    """The inconsistent two-arrow table tokenizer over abstract points, with its p*."""
    sigma = tk.Alphabet(("s1", "s2", "s3"))
    delta = tk.Alphabet(("d1", "d2", "d3"), tk.TOKENS)
    cs, ts = tk.Space(sigma, 1), tk.Space(delta, 1)
    encoder = table_map(cs, ts, {"ε": "ε", "s1": "d1", "s2": "d3", "s3": "d3"})
    decoder = table_map(ts, cs, {"ε": "ε", "d1": "s2", "d2": "s2", "d3": "s3"})
    p_star = dist_from(cs, {"s1": "1/5", "s2": "2/5", "s3": "2/5"})
    return tk.Tokenizer(encoder, decoder), p_star


def swap_pieces():
    """A tokenizer whose round trip transposes two points: consistent for equal masses, not exact."""
    sigma = tk.Alphabet(("x1", "x2", "x3"))
    delta = tk.Alphabet(("y1", "y2", "y3"), tk.TOKENS)
    cs, ts = tk.Space(sigma, 1), tk.Space(delta, 1)
    encoder = table_map(cs, ts, {"ε": "ε", "x1": "y1", "x2": "y2", "x3": "y3"})
    decoder = table_map(ts, cs, {"ε": "ε", "y1": "x2", "y2": "x1", "y3": "x3"})
    p_equal = dist_from(cs, {"x1": "1/4", "x2": "1/4", "x3": "1/2"})
    return tk.Tokenizer(encoder, decoder), p_equal


def the_vocab():
    """The five-token vocabulary over {t, h, e} used throughout."""
    sigma = tk.Alphabet(("t", "h", "e"))
    return tk.Vocab.from_texts(
        sigma, [("t", "t"), ("h", "h"), ("e", "e"), ("th", "th"), ("he", "he")]
    )


def random_dist(space, rng, max_support=6):
    pool = list(space.strings())
    k = rng.randint(1, min(max_support, len(pool)))
    support = rng.sample(pool, k)
    weights = [rng.randint(1, 9) for _ in support]
    total = sum(weights)
    return tk.Dist(space, {s: Fraction(w, total) for s, w in zip(support, weights)})


def random_map(dom_space, cod_space, rng, max_support=4):
    kernel = {x: random_dist(cod_space, rng, max_support) for x in dom_space.strings()}
    return tk.StochMap(dom_space, cod_space, kernel)


def random_open_vocab(rng, max_sigma=3, max_spelling=3, max_extras=3):
    """A random open vocabulary: all single characters plus a few longer spellings."""
    k = rng.randint(1, max_sigma)
    labels = tuple("abc"[:k])
    sigma = tk.Alphabet(labels)
    entries = [(lab, lab) for lab in labels]
    seen = {(i,) for i in range(k)}
    for _ in range(rng.randint(0, max_extras)):
        length = rng.randint(2, max_spelling)
        syms = tuple(rng.randrange(k) for _ in range(length))
        if syms in seen:
            continue
        seen.add(syms)
        text = "".join(labels[i] for i in syms)
        entries.append((text, text))
    return tk.Vocab.from_texts(sigma, entries)


def corrupt_first_unit_row(t):
    """Redirect the decoder row at the encoding of the first length-1 text."""
    first = min((s for s in t.char_space.strings() if len(s) == 1), key=tk.Str.sort_key)
    target = t.encoder.value_at(first)
    wrong = next(s for s in t.decoder.cod_space.strings() if s != first)
    kernel = dict(t.decoder.kernel)
    kernel[target] = tk.point_mass(wrong, t.decoder.cod_space)
    return tk.Tokenizer(t.encoder, tk.StochMap(t.decoder.dom_space, t.decoder.cod_space, kernel))
