"""Subsequential transducers: execution, greedy-encoder construction, equivalence.

A subsequential transducer is a deterministic finite-state machine with an
output string per transition and a terminal output string per state; the
value of an input is the concatenation of the transition outputs along its
path followed by the terminal string of the state it ends in. Transition
functions are partial and represented as explicit tables: leaving the
table is an error, not an implicit sink.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import UndefinedTransition, VocabNotOpen
from .reports import Verdict
from .strings import Alphabet, Str, concat, enumerate_strings
from .encoders import Vocab


@dataclass(frozen=True)
class SubseqTransducer:
    """States, alphabets, initial state, next/output tables, and terminal outputs."""

    states: tuple[str, ...]
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    initial: str
    next_state: dict[tuple[str, int], str]
    output: dict[tuple[str, int], Str]
    terminal: dict[str, Str]

    def __post_init__(self):
        state_set = set(self.states)
        if len(state_set) != len(self.states):
            raise ValueError("state names must be distinct")
        if self.initial not in state_set:
            raise ValueError("initial state must be a declared state")
        if self.next_state.keys() != self.output.keys():
            raise ValueError("next-state and output tables must share one domain")
        k = len(self.input_alphabet)
        for (q, a), q2 in self.next_state.items():
            if q not in state_set or q2 not in state_set:
                raise ValueError(f"transition ({q!r}, {a}) references an undeclared state")
            if not 0 <= a < k:
                raise ValueError(f"transition symbol {a} outside the input alphabet")
        for key, out in self.output.items():
            if out.alphabet != self.output_alphabet:
                raise ValueError(f"output at {key!r} is not over the output alphabet")
        if self.terminal.keys() != state_set:
            raise ValueError("terminal function must be defined on every state")
        for q, out in self.terminal.items():
            if out.alphabet != self.output_alphabet:
                raise ValueError(f"terminal output at {q!r} is not over the output alphabet")


def run_path(t: SubseqTransducer, gamma: Str) -> tuple[str, Str]:
    """Follow gamma through the tables; return the end state and the path output only."""
    if gamma.alphabet != t.input_alphabet:
        raise ValueError("input is not over the transducer's input alphabet")
    state = t.initial
    out: list[int] = []
    for pos, a in enumerate(gamma.syms):
        key = (state, a)
        if key not in t.next_state:
            raise UndefinedTransition(state, t.input_alphabet.labels[a], pos)
        out.extend(t.output[key].syms)
        state = t.next_state[key]
    return state, Str(t.output_alphabet, out)


def run(t: SubseqTransducer, gamma: Str) -> Str:
    """Path output followed by the terminal output of the final state."""
    state, path_out = run_path(t, gamma)
    return concat(path_out, t.terminal[state])


def sequential_of(t: SubseqTransducer) -> Verdict:
    """True iff the terminal function is empty everywhere (no flush needed)."""
    for q in t.states:
        if len(t.terminal[q]) != 0:
            return Verdict.failed(q, "state has a nonempty terminal output")
    return Verdict.passed()


def equivalent_on(t: SubseqTransducer, encode: Callable[[Str], Str], max_len: int) -> Verdict:
    """Compare the transducer against a direct encoder on every input up to max_len."""
    for gamma in enumerate_strings(t.input_alphabet, max_len):
        got = run(t, gamma)
        want = encode(gamma)
        if got != want:
            return Verdict.failed((gamma, got, want))
    return Verdict.passed()


def build_maximal_munch_transducer(vocab: Vocab) -> SubseqTransducer:
    """Compile greedy longest-match encoding into a subsequential transducer.

    States are the viable pending buffers: strict prefixes of spellings,
    including the empty buffer. Reading a character extends the buffer;
    once no spelling extends it, the longest spelling prefixing it is
    emitted and the remainder is re-scanned, with the re-scan folded into
    the state construction so running stays a single left-to-right pass.
    The terminal function flushes the remaining buffer greedily.
    """
    if not vocab.is_open:
        raise VocabNotOpen("the transducer construction needs an open vocabulary")
    sigma, delta = vocab.sigma, vocab.delta
    strict_prefixes = {()}
    for _, sp in vocab.entries:
        for i in range(1, len(sp.syms)):
            strict_prefixes.add(sp.syms[:i])

    def longest_spelling(rest: tuple[int, ...]) -> int:
        best, best_len = None, 0
        for j, (_, sp) in enumerate(vocab.entries):
            n = len(sp.syms)
            if n > best_len and rest[:n] == sp.syms:
                best, best_len = j, n
        assert best is not None, "open vocabulary guarantees a match"
        return best

    def settle(buf: tuple[int, ...]) -> tuple[tuple[int, ...], list[int]]:
        emitted: list[int] = []
        while buf not in strict_prefixes:
            j = longest_spelling(buf)
            emitted.append(j)
            buf = buf[len(vocab.spelling(j)) :]
        return buf, emitted

    def flush(buf: tuple[int, ...]) -> list[int]:
        emitted: list[int] = []
        while buf:
            j = longest_spelling(buf)
            emitted.append(j)
            buf = buf[len(vocab.spelling(j)) :]
        return emitted

    def name(buf: tuple[int, ...]) -> str:
        return "·".join(sigma.labels[i] for i in buf) if buf else "ε"

    states: list[tuple[int, ...]] = [()]
    seen = {()}
    next_state: dict[tuple[str, int], str] = {}
    output: dict[tuple[str, int], Str] = {}
    pos = 0
    while pos < len(states):
        buf = states[pos]
        pos += 1
        for a in range(len(sigma)):
            new_buf, emitted = settle(buf + (a,))
            if new_buf not in seen:
                seen.add(new_buf)
                states.append(new_buf)
            next_state[(name(buf), a)] = name(new_buf)
            output[(name(buf), a)] = Str(delta, emitted)
    terminal = {name(buf): Str(delta, flush(buf)) for buf in states}
    names = tuple(name(buf) for buf in states)
    if len(set(names)) != len(names):
        raise ValueError("buffer names collide; use distinct character labels")
    return SubseqTransducer(
        states=names,
        input_alphabet=sigma,
        output_alphabet=delta,
        initial="ε",
        next_state=next_state,
        output=output,
        terminal=terminal,
    )
