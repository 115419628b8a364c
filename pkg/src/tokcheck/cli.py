"""Command-line surface and JSON file formats.

Documents are UTF-8 JSON. Probabilities cross the boundary as exact
rational strings ("1/5"). Tokenizer specs declare a character alphabet, a
vocabulary, and an encoder/decoder description each of which is either
constructive (maximal_munch, bpe, uniform, concat) or an explicit kernel
table; abstract tokenizers are expressed as table maps over opaque labels.

Exit codes: 0 success or property true, 1 property false (witness printed),
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import sim
from .dist import Dist
from .encoders import (
    MergeList,
    Vocab,
    bpe_encode,
    concat_decoder,
    maximal_munch_encode,
    uniform_segmenter,
)
from .errors import ParseError, TokcheckError
from .stochmap import StochMap, materialize
from .strings import CHARACTERS, TOKENS, Alphabet, Space, parse_str
from .tokenizer import (
    Tokenizer,
    classify,
    exact_iff_all_consistent_probe,
    is_exact,
    marginalize,
    preimage_bound,
    preimages,
)
from .transducer import SubseqTransducer, build_maximal_munch_transducer, equivalent_on, run


@dataclass
class SpecBundle:
    tokenizer: Tokenizer
    vocab: Vocab | None
    encoder_type: str
    decoder_type: str


def _fraction(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


def _parse_table(rows, dom_alpha: Alphabet, cod_alpha: Alphabet):
    """Parse [(input, [(output, prob), ...]), ...] into Str-keyed raw rows."""
    parsed = {}
    for item in rows:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ParseError(f"table row must be [input, outputs], got {item!r}")
        x = parse_str(dom_alpha, item[0])
        if x in parsed:
            raise ParseError(f"duplicate table row for {item[0]!r}")
        parsed[x] = {parse_str(cod_alpha, out): _fraction(pr) for out, pr in item[1]}
    return parsed


def _table_map(rows, dom_space: Space, cod_space: Space) -> StochMap:
    raw = _parse_table(rows, dom_space.alphabet, cod_space.alphabet)
    missing = dom_space.size() - len(raw)
    if missing:
        raise ParseError(f"table is missing {missing} row(s); it must cover the whole domain")
    try:
        kernel = {x: Dist(cod_space, mass) for x, mass in raw.items()}
        return StochMap(dom_space, cod_space, kernel)
    except (ValueError, TokcheckError) as exc:
        raise ParseError(f"bad table: {exc}") from exc


def table_rows(f: StochMap) -> list:
    """Serialize a map's kernel as [(input, [(output, prob), ...]), ...]."""
    rows = []
    for x, row in f.rows():
        rows.append([x.render(), [[y.render(), str(m)] for y, m in sorted(row.mass.items(), key=lambda kv: kv[0].sort_key())]])
    return rows


def load_spec(path: str, max_len: int) -> SpecBundle:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    try:
        return _build_spec(doc, max_len)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, TokcheckError) as exc:
        raise ParseError(f"bad tokenizer spec: {exc}") from exc


def _build_spec(doc: dict, max_len: int) -> SpecBundle:
    sigma = Alphabet(tuple(doc["alphabet"]), CHARACTERS)
    entries = doc["vocab"]
    delta = Alphabet(tuple(e["token"] for e in entries), TOKENS)
    vocab = None
    if all("spelling" in e for e in entries):
        vocab = Vocab.from_texts(sigma, [(e["token"], e["spelling"]) for e in entries])
    enc_doc, dec_doc = doc["encoder"], doc["decoder"]
    enc_type, dec_type = enc_doc["type"], dec_doc["type"]

    if enc_type == "table":
        enc_raw = _parse_table(enc_doc["table"], sigma, delta)
        n = max(len(x) for x in enc_raw)
    else:
        n = max_len
    if dec_type == "table":
        dec_raw = _parse_table(dec_doc["table"], delta, sigma)
        m = max(len(x) for x in dec_raw)
        n_out = max(n, max((len(y) for row in dec_raw.values() for y in row), default=0))
    else:
        if vocab is None:
            raise ParseError("constructive decoders need a spelling for every vocab entry")
        m = n
        n_out = m * vocab.max_spelling_len
    char_space, token_space = Space(sigma, n), Space(delta, m)

    if enc_type == "table":
        encoder = _table_map(enc_doc["table"], char_space, token_space)
    elif enc_type in ("maximal_munch", "bpe", "uniform"):
        if vocab is None:
            raise ParseError("constructive encoders need a spelling for every vocab entry")
        if enc_type == "maximal_munch":
            unk = enc_doc.get("unk_token")
            proc = lambda s: maximal_munch_encode(vocab, s, unk)
        elif enc_type == "bpe":
            merges = MergeList.from_texts(vocab, [tuple(p) for p in enc_doc["merges"]])
            proc = lambda s: bpe_encode(vocab, merges, s)
        else:
            proc = lambda s: uniform_segmenter(vocab, s)
        encoder = materialize(proc, char_space, token_space)
    else:
        raise ParseError(f"unknown encoder type {enc_type!r}")

    if dec_type == "table":
        decoder = _table_map(dec_doc["table"], token_space, Space(sigma, n_out))
    elif dec_type == "concat":
        decoder = concat_decoder(vocab, m, n_out)
    else:
        raise ParseError(f"unknown decoder type {dec_type!r}")
    return SpecBundle(Tokenizer(encoder, decoder), vocab, enc_type, dec_type)


def load_dist(path: str, space: Space) -> Dist:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    try:
        mass = {}
        for item in doc:
            s = parse_str(space.alphabet, item["string"])
            if s in mass:
                raise ParseError(f"duplicate entry for {item['string']!r}")
            mass[s] = _fraction(item["prob"])
        return Dist(space, mass)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, TokcheckError) as exc:
        raise ParseError(f"bad distribution file: {exc}") from exc


def dist_rows(d: Dist) -> list:
    return [{"string": s.render(), "prob": str(m)} for s, m in sorted(d.mass.items(), key=lambda kv: kv[0].sort_key())]


def transducer_to_json(t: SubseqTransducer) -> dict:
    return {
        "states": list(t.states),
        "initial": t.initial,
        "transitions": [
            {
                "from": q,
                "in": t.input_alphabet.labels[a],
                "to": t.next_state[(q, a)],
                "out": t.output[(q, a)].render(),
            }
            for (q, a) in sorted(t.next_state, key=lambda key: (key[0], key[1]))
        ],
        "terminal": [{"state": q, "out": t.terminal[q].render()} for q in t.states],
    }


def transducer_from_json(doc: dict, sigma: Alphabet, delta: Alphabet) -> SubseqTransducer:
    try:
        next_state, output = {}, {}
        for tr in doc["transitions"]:
            key = (tr["from"], sigma.index(tr["in"]))
            next_state[key] = tr["to"]
            output[key] = parse_str(delta, tr["out"])
        terminal = {row["state"]: parse_str(delta, row["out"]) for row in doc["terminal"]}
        return SubseqTransducer(
            states=tuple(doc["states"]),
            input_alphabet=sigma,
            output_alphabet=delta,
            initial=doc["initial"],
            next_state=next_state,
            output=output,
            terminal=terminal,
        )
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad transducer document: {exc}") from exc


def _cmd_check(args) -> int:
    bundle = load_spec(args.spec, args.max_len)
    t = bundle.tokenizer
    exact = is_exact(t)
    report = classify(t)
    probe = exact_iff_all_consistent_probe(t, trials=args.trials, seed=args.seed)
    if args.json:
        doc = {
            "exact": bool(exact),
            "witness": None if exact else exact.witness.render(),
            "classification": {
                "deterministic_encoder": report.deterministic_encoder.ok,
                "deterministic_decoder": report.deterministic_decoder.ok,
                "bijective": report.bijective.ok,
                "multiplicative_decoder": report.multiplicative_decoder.ok,
                "trivial_kernel": report.trivial_kernel.ok,
                "prefix_monotone": report.prefix_monotone.ok,
            },
            "probe": probe.describe(),
        }
        print(json.dumps(doc, ensure_ascii=False))
    else:
        if exact:
            print("exact: true")
        else:
            print(f"exact: false, witness {exact.witness.render()}")
        for line in report.lines():
            print(line)
        print(f"probe: {probe.describe()}")
    return 0 if exact else 1


def _cmd_preimages(args) -> int:
    bundle = load_spec(args.spec, args.max_len)
    t = bundle.tokenizer
    sigma = parse_str(t.char_space.alphabet, args.text)
    for delta in preimages(t, sigma):
        print(delta.render())
    print(f"bound: {preimage_bound(len(sigma), len(t.token_space.alphabet))}")
    return 0


def _cmd_marginalize(args) -> int:
    bundle = load_spec(args.spec, args.max_len)
    t = bundle.tokenizer
    q = load_dist(args.dist, t.token_space)
    if args.text is not None:
        print(marginalize(t, q, parse_str(t.char_space.alphabet, args.text)))
        return 0
    total = Fraction(0)
    for sigma in t.char_space.strings():
        value = marginalize(t, q, sigma)
        if value:
            print(f"{sigma.render()}\t{value}")
            total += value
    print(f"total: {total}")
    return 0


def _cmd_simulate(args) -> int:
    bundle = load_spec(args.spec, args.max_len)
    t = bundle.tokenizer
    p_star = load_dist(args.dist, t.char_space)
    schedule = [int(part) for part in args.schedule.split(",") if part]
    summary = sim.run_estimation(t, p_star, schedule, seed=args.seed)
    for n, tv in summary.rows():
        print(f"{n}\t{tv}\t{float(tv):.6f}")
    print(f"bias: {summary.bias}")
    print(f"converged: {'true' if summary.converged else 'false'} (tolerance {summary.tolerance})")
    return 0


def _cmd_transduce(args) -> int:
    bundle = load_spec(args.spec, args.max_len)
    if bundle.vocab is None:
        raise ParseError("transduce needs a vocabulary with spellings")
    vocab = bundle.vocab
    if args.transducer:
        try:
            with open(args.transducer, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ParseError(f"cannot read {args.transducer}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"{args.transducer} is not valid JSON: {exc}") from None
        machine = transducer_from_json(doc, vocab.sigma, vocab.delta)
    else:
        machine = build_maximal_munch_transducer(vocab)
    if args.text is not None:
        gamma = parse_str(vocab.sigma, args.text)
        print(run(machine, gamma).render())
    if args.verify_max_len is not None:
        verdict = equivalent_on(
            machine, lambda s: maximal_munch_encode(vocab, s), args.verify_max_len
        )
        if verdict:
            print("equivalent: true")
        else:
            gamma, got, want = verdict.witness
            print(f"equivalent: false, witness {gamma.render()} -> {got.render()} (expected {want.render()})")
            return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tokcheck", description="Tokenizer soundness checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="tokenizer spec JSON file")
        p.add_argument("--max-len", type=int, default=5, help="truncation for constructive specs")

    p = sub.add_parser("check", help="exactness, classification, and the consistency probe")
    common(p)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("preimages", help="token sequences decoding to a text")
    common(p)
    p.add_argument("--text", required=True)
    p.set_defaults(func=_cmd_preimages)

    p = sub.add_parser("marginalize", help="mass a token distribution puts on a text")
    common(p)
    p.add_argument("dist", help="distribution JSON over token sequences")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--text")
    group.add_argument("--all", action="store_true")
    p.set_defaults(func=_cmd_marginalize)

    p = sub.add_parser("simulate", help="estimation trace through the tokenizer")
    common(p)
    p.add_argument("dist", help="target distribution JSON over texts")
    p.add_argument("--schedule", default="100,1000,10000")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("transduce", help="run and verify the greedy-encoder transducer")
    common(p)
    p.add_argument("--text")
    p.add_argument("--verify-max-len", type=int, default=None)
    p.add_argument("--transducer", help="transducer JSON to use instead of building one")
    p.set_defaults(func=_cmd_transduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TokcheckError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
