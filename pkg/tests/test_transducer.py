import pytest

import tokcheck as tk
from tokcheck.errors import UndefinedTransition, VocabNotOpen


@pytest.fixture(scope="module")
def machine(vocab):
    return tk.build_maximal_munch_transducer(vocab)


def test_run_examples(machine, vocab):
    sig = vocab.sigma
    assert tk.run(machine, tk.parse_str(sig, "ε")).render() == "ε"
    assert tk.run(machine, tk.parse_str(sig, "th")).render() == "th"
    assert tk.run(machine, tk.parse_str(sig, "the")).render() == "th|e"
    assert tk.run(machine, tk.parse_str(sig, "hethe")).render() == "he|th|e"


def test_empty_input_yields_terminal_only():
    alpha = tk.Alphabet(("a",))
    beta = tk.Alphabet(("x",), tk.TOKENS)
    flush = tk.Str(beta, (0,))
    t = tk.SubseqTransducer(
        states=("q0",),
        input_alphabet=alpha,
        output_alphabet=beta,
        initial="q0",
        next_state={},
        output={},
        terminal={"q0": flush},
    )
    assert tk.run(t, tk.Str(alpha, ())) == flush


def test_undefined_transition_error():
    alpha = tk.Alphabet(("a", "b"))
    beta = tk.Alphabet(("x",), tk.TOKENS)
    eps = tk.Str(beta, ())
    t = tk.SubseqTransducer(
        states=("q0",),
        input_alphabet=alpha,
        output_alphabet=beta,
        initial="q0",
        next_state={("q0", 0): "q0"},
        output={("q0", 0): eps},
        terminal={"q0": eps},
    )
    with pytest.raises(UndefinedTransition) as info:
        tk.run(t, tk.Str(alpha, (0, 1, 0)))
    assert info.value.position == 1
    assert tk.sequential_of(t)  # hand-built machine with empty terminals everywhere


def test_next_and_output_domains_must_match():
    alpha = tk.Alphabet(("a",))
    beta = tk.Alphabet(("x",), tk.TOKENS)
    eps = tk.Str(beta, ())
    with pytest.raises(ValueError):
        tk.SubseqTransducer(
            states=("q0",),
            input_alphabet=alpha,
            output_alphabet=beta,
            initial="q0",
            next_state={("q0", 0): "q0"},
            output={},
            terminal={"q0": eps},
        )


def test_construction_requires_open_vocab(vocab):
    partial = tk.Vocab.from_texts(vocab.sigma, [("t", "t"), ("he", "he")])
    with pytest.raises(VocabNotOpen):
        tk.build_maximal_munch_transducer(partial)


def test_equivalence_with_direct_encoder(machine, vocab):
    verdict = tk.equivalent_on(machine, lambda s: tk.maximal_munch_encode(vocab, s), 6)
    assert verdict


def test_equivalence_at_zero_compares_only_empty(machine, vocab):
    assert tk.equivalent_on(machine, lambda s: tk.maximal_munch_encode(vocab, s), 0)
    # a reference that disagrees beyond the empty string is not noticed at 0
    lying = lambda s: tk.Str(vocab.delta, (0,) * len(s))
    assert tk.equivalent_on(machine, lying, 0)


def test_corrupted_terminal_detected_with_minimal_witness(machine, vocab):
    bad_terminal = dict(machine.terminal)
    bad_terminal["t"] = tk.parse_str(vocab.delta, "h")
    corrupted = tk.SubseqTransducer(
        states=machine.states,
        input_alphabet=machine.input_alphabet,
        output_alphabet=machine.output_alphabet,
        initial=machine.initial,
        next_state=machine.next_state,
        output=machine.output,
        terminal=bad_terminal,
    )
    verdict = tk.equivalent_on(corrupted, lambda s: tk.maximal_munch_encode(vocab, s), 4)
    assert not verdict
    gamma, got, want = verdict.witness
    assert gamma == tk.parse_str(vocab.sigma, "t")
    assert got.render() == "h" and want.render() == "t"


def test_sequential_verdicts(machine, vocab):
    verdict = tk.sequential_of(machine)
    assert not verdict  # multi-character spellings force a buffer flush

    singles = tk.Vocab.from_texts(vocab.sigma, [("t", "t"), ("h", "h"), ("e", "e")])
    relabeler = tk.build_maximal_munch_transducer(singles)
    assert tk.sequential_of(relabeler)
    assert relabeler.states == ("ε",)
    for text in tk.enumerate_strings(vocab.sigma, 4):
        assert tk.run(relabeler, text).syms == text.syms


def test_state_count_bounded_by_strict_prefixes(machine, vocab):
    prefixes = set()
    for sp in vocab.spellings():
        for i in range(1, len(sp)):
            prefixes.add(sp.syms[:i])
    assert len(machine.states) <= len(prefixes) + 1


def test_path_output_is_prefix_monotone(machine, vocab):
    sig = vocab.sigma
    for gamma in tk.enumerate_strings(sig, 4):
        _, out = tk.run_path(machine, gamma)
        for a in range(len(sig)):
            _, ext = tk.run_path(machine, tk.Str(sig, gamma.syms + (a,)))
            assert tk.is_prefix(out, ext)


def test_run_map_has_stable_variation_across_truncations(machine, vocab):
    # measured growth constants plateau as the domain widens, as expected for
    # a map realized by a finite-state device (contrast with reversal)
    measured = []
    for n in (4, 5, 6):
        dom = tk.Space(vocab.sigma, n)
        cod = tk.Space(vocab.delta, n)
        f = tk.materialize(lambda g: tk.run(machine, g), dom, cod)
        measured.append([tk.bounded_variation_probe(f, k)[0] for k in range(4)])
    assert measured[0] == measured[1] == measured[2] == [0, 2, 3, 4]
