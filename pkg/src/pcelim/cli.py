"""Command-line front end.

Every subcommand parses its flags, calls one library routine and formats the
result; ``--format machine`` switches to tab-separated records.
"""

from __future__ import annotations

import argparse
import re
import sys

from .alphabet import AlphabetError, parse_alphabet
from .elimination import beta_generators, is_tfsa
from .factorization import EliminationError, build_plan, decompose, plan_factorization, verify_factorization
from .group import extend_alphabet, reduce_trace
from .lie import lie_basis
from .series import characteristic_series, mobius_polynomial
from .trace import normalize


class CliError(Exception):
    """A domain error to report with exit status 1."""


def read_alphabet(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_alphabet(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read alphabet file: {exc}") from None


def parse_subset(text):
    return [x for x in re.split(r"[,\s]+", text.strip()) if x]


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _letters(t):
    return " ".join(t.word) if t.codes else "1"


# -- commands ------------------------------------------------------------------

def cmd_tfsa(args, out):
    alpha = read_alphabet(args.alphabet)
    v = is_tfsa(alpha, parse_subset(args.subset))
    if args.format == "machine":
        print("TFSA" if v else "\t".join(("NOT TFSA",) + v.witness), file=out)
    else:
        print(v, file=out)


def cmd_beta(args, out):
    alpha = read_alphabet(args.alphabet)
    X = beta_generators(alpha, parse_subset(args.subset), args.maxlen)
    if args.format == "machine":
        for g in X.generators:
            print(f"gen\t{g}", file=out)
        for x, y in X.edges():
            print(f"edge\t{x}\t{y}", file=out)
        print(f"complete\t{str(X.complete).lower()}", file=out)
        return
    state = "complete" if X.complete else f"truncated at length {args.maxlen}"
    print(f"# beta generators ({state})", file=out)
    print(X.as_alphabet(), file=out)


def cmd_mobius(args, out):
    P = mobius_polynomial(read_alphabet(args.alphabet))
    if args.format == "machine":
        for t, c in P.items():
            print(f"{c}\t{t}", file=out)
    else:
        print(P, file=out)


def cmd_counts(args, out):
    S = characteristic_series(read_alphabet(args.alphabet), args.maxlen)
    counts = [0] * (args.maxlen + 1)
    for t, c in S.items():
        counts[len(t)] += c
    sep = "\t" if args.format == "machine" else " "
    for n, c in enumerate(counts):
        print(f"{n}{sep}{c}", file=out)


def cmd_factorize(args, out):
    alpha = read_alphabet(args.alphabet)
    plan = build_plan(alpha, args.plan, args.maxlen)
    F = plan_factorization(plan)
    machine = args.format == "machine"
    for i, level in enumerate(F.levels):
        gens = [str(g) for g in level.generators]
        if machine:
            state = "complete" if level.complete else "truncated"
            print("\t".join(["level", str(i), state] + gens), file=out)
        else:
            tail = ", ..." if not level.complete else ""
            print(f"level {i}: {{{', '.join(gens)}{tail}}}", file=out)
    for i, step in enumerate(plan.steps):
        names = ",".join(str(g) for g in step.eliminated)
        if machine:
            print(f"step\t{i}\t{names}\t{step.verdict.is_tfsa}", file=out)
        else:
            print(f"step {i}: eliminate {names} ({'TFSA' if step.verdict else 'NOT TFSA'})", file=out)
    if args.trace is not None:
        t = normalize(alpha, args.trace)
        if len(t) > args.maxlen:
            raise CliError(f"trace longer than --maxlen {args.maxlen}")
        for i, m in decompose(F, t):
            print(f"factor\t{i}\t{m}" if machine else f"factor {i}: {m}", file=out)
    if args.check:
        chk = verify_factorization(F, args.maxlen)
        if machine:
            print(f"unique\t{args.maxlen}\t{str(chk.ok).lower()}", file=out)
        elif chk:
            print(f"every trace of length <= {args.maxlen} decomposes uniquely", file=out)
        else:
            t, k = chk.counterexample
            print(f"{t} has {k} decompositions", file=out)


def cmd_lie_basis(args, out):
    alpha = read_alphabet(args.alphabet)
    plan = build_plan(alpha, args.plan, args.degree)
    sep = "\t" if args.format == "machine" else " "
    for g, p in lie_basis(alpha, plan, args.degree):
        print(sep.join((str(p.degree()), str(g), str(p))), file=out)


def cmd_group_reduce(args, out):
    D = extend_alphabet(read_alphabet(args.alphabet))
    print(_letters(reduce_trace(D, args.word)), file=out)


def cmd_verify(args, out):
    from .verify import run

    only = None
    if args.only:
        try:
            only = {int(k) for k in parse_subset(args.only)}
        except ValueError:
            raise CliError(f"--only expects criterion numbers, got {args.only!r}") from None
        bad = only - set(range(1, 12))
        if bad:
            raise CliError(f"no such criterion: {sorted(bad)}")
    outcomes = run(only, out)
    return 0 if all(o.ok for o in outcomes) else 1


COMMANDS = {
    "tfsa": cmd_tfsa,
    "beta": cmd_beta,
    "mobius": cmd_mobius,
    "counts": cmd_counts,
    "factorize": cmd_factorize,
    "lie-basis": cmd_lie_basis,
    "group-reduce": cmd_group_reduce,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="pcelim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, alphabet=True):
        p = sub.add_parser(name, help=help)
        if alphabet:
            p.add_argument("--alphabet", required=True, help="alphabet file")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        return p

    p = add("tfsa", "decide whether a subalphabet is transitively factorizing")
    p.add_argument("--subset", required=True, help="letters of B, comma or space separated")
    p = add("beta", "list beta generators of the elimination of B")
    p.add_argument("--subset", required=True)
    p.add_argument("--maxlen", type=_positive, default=6)
    add("mobius", "print the Moebius polynomial")
    p = add("counts", "number of traces of each length, from the characteristic series")
    p.add_argument("--maxlen", type=_positive, default=6)
    p = add("factorize", "run an elimination plan and print the factorization")
    p.add_argument("--plan", required=True, help="e.g. 'c;acc;b;d;ac;a'")
    p.add_argument("--maxlen", type=_positive, default=6)
    p.add_argument("--trace", help="also decompose this trace")
    p.add_argument("--check", action="store_true", help="verify unique decomposition up to --maxlen")
    p = add("lie-basis", "Lie basis by bracketing along an elimination plan")
    p.add_argument("--plan", required=True)
    p.add_argument("--degree", type=_positive, default=3)
    p = add("group-reduce", "reduced form of a group word")
    p.add_argument("--word", required=True, help="e.g. \"c' a c\"")
    p = add("verify", "run the acceptance suite", alphabet=False)
    p.add_argument("--only", help="criterion numbers, e.g. '1,2,10'")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        status = COMMANDS[args.command](args, out)
    except (CliError, AlphabetError, EliminationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
