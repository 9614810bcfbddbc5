"""Acceptance suite: every criterion as a function returning (ok, detail).

Run with ``python -m pcelim.verify`` or ``pcelim verify``; each criterion
prints one PASS/FAIL line.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from itertools import combinations

from .alphabet import IndependenceAlphabet, derived_independence
from .elimination import (
    beta_generators,
    bounded_code_check,
    condition_ii_check,
    is_tfsa,
    tfsa_by_closure,
)
from .factorization import build_plan, plan_factorization, spell_over, verify_factorization
from .group import (
    _cancellable,
    alpha_injectivity_witness,
    commutation_closure,
    extend_alphabet,
    group_equal,
    group_mul,
    reduce_trace,
    retract,
    rho_generators,
    semidirect_split,
)
from .lie import lazard_split_check, lie_basis, lie_dimension_oracle, rank, tfsa_obstruction
from .oracles import RewritingOracle, piling, piling_length
from .series import (
    TracePolynomial,
    characteristic_series,
    derived_mobius_polynomial,
    invert,
    mobius_polynomial,
    witt_dimensions,
)
from .trace import Trace, enumerate_codes, initial_mask, normal_codes, normalize

LETTERS = "abcdef"


def graph(letters, edges) -> IndependenceAlphabet:
    return IndependenceAlphabet.from_edges(list(letters), [tuple(e) for e in edges])


def abc_star():
    """a - b, c isolated (the standard non-TFSA example)."""
    return graph("abc", ["ab"])


def path(n):
    return graph(LETTERS[:n], [LETTERS[i:i + 2] for i in range(n - 1)])


def all_graphs(n):
    """Every labelled commutation graph on the first n letters."""
    pairs = list(combinations(LETTERS[:n], 2))
    for bits in range(1 << len(pairs)):
        yield graph(LETTERS[:n], [p for i, p in enumerate(pairs) if bits >> i & 1])


def random_graph(rng: random.Random, max_letters: int) -> IndependenceAlphabet:
    n = rng.randint(1, max_letters)
    p = rng.random()
    return graph(LETTERS[:n], [e for e in combinations(LETTERS[:n], 2) if rng.random() < p])


def atlas_graphs(max_letters):
    """One representative per isomorphism class, with its automorphism group."""
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0:
            continue
        if n > max_letters:
            break
        alpha = graph(LETTERS[:n], [(LETTERS[u], LETTERS[v]) for u, v in G.edges()])
        autos = [tuple(m[i] for i in range(n)) for m in GraphMatcher(G, G).isomorphisms_iter()]
        yield alpha, autos


def subsets_up_to(n, autos):
    seen = set()
    for mask in range(1 << n):
        canon = min(sum(1 << perm[i] for i in range(n) if mask >> i & 1) for perm in autos)
        if canon not in seen:
            seen.add(canon)
            yield frozenset(LETTERS[i] for i in range(n) if canon >> i & 1)


# -- criteria ------------------------------------------------------------------

def criterion_1():
    A = abc_star()
    t = lambda w: normalize(A, w)
    X1 = derived_independence(A, [t("c"), t("cb"), t("ca")])
    X2 = derived_independence(A, [t("b"), t("a"), t("ca"), t("cb")])
    r1 = bounded_code_check(A, X1, 6)
    r2 = bounded_code_check(A, X2, 6)
    if not r1 or r2:
        return False, f"code({{c,cb,ca}})={r1.is_code}, code({{b,a,ca,cb}})={r2.is_code}"
    w, f1, f2 = r2.witness
    ok = f1 != f2
    for f in (f1, f2):
        prod = ()
        for g in f:
            prod = normal_codes(prod + g.codes, A._dep)
        ok &= prod == w.codes
    shown = " = ".join(".".join(map(str, f)) for f in (f1, f2))
    return ok, f"{{c,cb,ca}} is a code to length 6; {{b,a,ca,cb}}: {w} = {shown}"


def criterion_2():
    A = abc_star()
    v = is_tfsa(A, {"c"})
    beta = beta_generators(A, {"c"}, 6)
    want = {normalize(A, w) for w in ("a", "b", "ac", "bc")}
    chk = bounded_code_check(A, beta, 6)
    ok = not v and v.witness == ("a", "c", "b") and want <= set(beta.generators) and not chk
    if ok:
        w, f1, f2 = chk.witness
        facts = {tuple(map(str, f1)), tuple(map(str, f2))}
        ok = str(w) == "abc" and facts == {("a", "bc"), ("b", "ac")}
        detail = f"witness {' - '.join(v.witness)}; {w} = {'.'.join(map(str, f1))} = {'.'.join(map(str, f2))}"
    else:
        detail = f"verdict {v!s}; code check {chk}"
    return ok, detail


def criterion_3():
    A = path(3)
    v = is_tfsa(A, {"c"})
    beta = beta_generators(A, {"c"}, 5)
    names = [str(g) for g in beta.generators]
    ok = bool(v) and names == ["a", "b", "ac", "acc", "accc", "acccc"]
    edges = {frozenset(map(str, e)) for e in beta.edges()}
    want = {frozenset(("b", "a" + "c" * n)) for n in range(5)}
    ok &= edges == want
    # 1 / (1 - (b + sum a c^n) + sum a b c^n) against the indicator of <beta>
    n = 6
    X = beta_generators(A, {"c"}, n)
    S = invert(derived_mobius_polynomial(X, n), n)
    cmask = 1 << A.index("c")
    bad = 0
    for level in enumerate_codes(A, n):
        for codes in level:
            inside = not initial_mask(codes, A._dep) & cmask
            inside_spelled = spell_over(X, Trace(A, codes)) is not None
            coeff = S.terms.get(codes, 0)
            bad += (coeff != int(inside)) + (inside != inside_spelled)
    ok &= bad == 0
    return ok, f"beta = {{{', '.join(names)}}}; {len(edges)} edges; {bad} series mismatches to length {n}"


def criterion_4():
    A = path(4)
    plan = build_plan(A, "c;acc;b;d;ac;a", 5)
    verdicts = [bool(s.verdict) for s in plan.steps]
    chk = verify_factorization(plan_factorization(plan), 5)
    return all(verdicts) and bool(chk), f"verdicts {verdicts}; unique decomposition to length 5: {chk.ok}"


def criterion_5():
    A = path(4)
    plan = build_plan(A, "c;acc;b;d;ac;a", 3)
    basis = lie_basis(A, plan, 3)
    profile = [sum(1 for _, p in basis if p.degree() == m) for m in (1, 2, 3)]
    oracle = [lie_dimension_oracle(A, m) for m in (1, 2, 3)]
    ranks = [rank(p for _, p in basis if p.degree() == m) for m in (1, 2, 3)]
    homog = all(p == p.homogeneous(p.degree()) for _, p in basis)
    ok = len(basis) == 15 and profile == [4, 3, 8] == oracle == ranks and homog
    return ok, f"{len(basis)} elements, profile {profile}, ranks {ranks}, oracle {oracle}"


def criterion_6(n=8, extra=20, seed=2024):
    rng = random.Random(seed)
    graphs = [abc_star(), path(3), path(4), graph("abc", []), graph("abc", ["ab", "ac", "bc"])]
    graphs += [random_graph(rng, 5) for _ in range(extra)]
    fails = []
    for A in graphs:
        S = characteristic_series(A, n)
        traces = {c for level in enumerate_codes(A, n) for c in level}
        ok = set(S.terms) == traces and all(c == 1 for c in S.terms.values())
        ok &= mobius_polynomial(A).mul(S, n) == TracePolynomial.one(A)
        if not ok:
            fails.append(str(A).replace("\n", "; "))
    return not fails, f"{len(graphs)} graphs to length {n}; failures: {fails or 'none'}"


def criterion_7(max_letters=4, n=5):
    count = 0
    for k in range(1, max_letters + 1):
        for A in all_graphs(k):
            w = witt_dimensions(A, n)
            o = [lie_dimension_oracle(A, m) for m in range(1, n + 1)]
            if w != o:
                return False, f"{A}: witt {w} vs oracle {o}"
            count += 1
    return True, f"{count} labelled graphs, degrees 1-{n}"


def tri_equivalence(A: IndependenceAlphabet, B, code_len=6, cond_len=5):
    """(is_tfsa, code check, condition (ii), closure route) for one pair."""
    v = bool(is_tfsa(A, B))
    if len(B) == len(A):
        beta = derived_independence(A, [])
    else:
        beta = beta_generators(A, B, code_len)
    code = bool(bounded_code_check(A, beta, code_len))
    cond = bool(condition_ii_check(A, B, cond_len))
    return v, code, cond, tfsa_by_closure(A, B)


def criterion_8(max_letters=6):
    cases = 0
    for A, autos in atlas_graphs(max_letters):
        for B in subsets_up_to(len(A), autos):
            res = tri_equivalence(A, B)
            cases += 1
            if len(set(res)) != 1:
                return False, f"disagreement {res} on {A} with B={sorted(B)}"
    return True, f"{cases} (graph, B) pairs up to isomorphism, zero exceptions"


LAZARD_PAIRS = [
    ("ab", ["ab"], "b"),
    ("abc", ["ab"], "c"),
    ("abc", ["ab", "bc"], "c"),
    ("abc", ["ab", "bc"], "b"),
    ("abc", [], "a"),
    ("abc", ["ab", "ac", "bc"], "ab"),
    ("abcd", ["ab", "bc", "cd"], "c"),
    ("abcd", ["ab", "bc", "cd"], "bc"),
    ("abcd", ["ab", "cd"], "a"),
    ("abcd", ["ac", "bd", "ab"], "cd"),
]


def criterion_9(n=4):
    details = []
    ok = True
    for letters, edges, B in LAZARD_PAIRS:
        rep = lazard_split_check(graph(letters, edges), set(B), n)
        ok &= rep.holds
        if not rep.holds:
            details.append(f"split fails for {letters} {edges} B={B}: {rep.dims}")
    lhs, rhs = tfsa_obstruction(abc_star(), {"c"})
    ident = bool(lhs) and lhs == rhs
    ok &= ident
    details.append(f"{len(LAZARD_PAIRS)} split checks to degree {n}; bracket identity holds: {ident}")
    return ok, "; ".join(details)


def _group_confluence(A):
    D = extend_alphabet(A)
    oracle = RewritingOracle(D.alphabet, D.bar)
    classes = {}
    bad = 0
    for level in enumerate_codes(D.alphabet, 6):
        for codes in level:
            t = Trace(D.alphabet, codes)
            red = reduce_trace(D, t)
            terms = oracle.terminals(t.word)
            if terms != {red.word}:
                bad += 1
            key = piling(A, [(D.base_letter(x), -1 if x.endswith("'") else 1) for x in t.word])
            if piling_length(key) != len(red):
                bad += 1
            classes.setdefault(key, []).append((t, red))
    # within each group class (at length <= 6) the shortest trace is unique and is the reduced one
    for members in classes.values():
        shortest = min(len(t) for t, _ in members)
        mins = [t for t, _ in members if len(t) == shortest]
        if len(mins) != 1 or any(red != mins[0] for _, red in members):
            bad += 1
    return bad


def _lemma_check(A, B, maxlen=4):
    D = extend_alphabet(A)
    A2 = D.alphabet
    dep = A2._dep
    Bt = {A2.index(x) for x in D.doubled_subset(B)}
    Zt = [i for i in range(len(A2)) if i not in Bt]
    bad = 0
    ws = [c for level in enumerate_codes(A2, maxlen - 1) for c in level
          if set(c) <= Bt and _cancellable(c, dep) is None]
    for z in Zt:
        for w in ws:
            zw = normal_codes((z,) + w, dep)
            in_beta = initial_mask(zw, dep) == 1 << z
            conj = reduce_trace(D, Trace(A2, normal_codes([x ^ 1 for x in reversed(w)] + [z] + list(w), dep)))
            if (len(conj) == 2 * len(w) + 1) != in_beta:
                bad += 1
    return bad


def criterion_10(random_words=500, seed=7):
    notes = []
    bad = sum(_group_confluence(A) for A in all_graphs(3))
    notes.append(f"confluence/minimality mismatches {bad}")
    lemma_bad = 0
    for k in (2, 3, 4):
        for A in all_graphs(k) if k < 4 else [path(4), graph("abcd", ["ab", "cd"]), graph("abcd", [])]:
            for r in range(1, k):
                for B in combinations(A.letters, r):
                    lemma_bad += _lemma_check(A, set(B))
    notes.append(f"lemma mismatches {lemma_bad}")
    rng = random.Random(seed)
    split_bad = 0
    for _ in range(random_words):
        A = random_graph(rng, 4)
        D = extend_alphabet(A)
        B = {a for a in A.letters if rng.random() < 0.5}
        g = D.trace([rng.choice(D.alphabet.letters) for _ in range(rng.randint(0, 10))])
        b_part, h_part = semidirect_split(D, g, B)
        ok = group_equal(D, group_mul(D, b_part, h_part), g)
        ok &= set(b_part.word) <= D.doubled_subset(B)
        ok &= retract(D, h_part, B).is_empty()
        split_bad += not ok
    notes.append(f"split failures {split_bad}/{random_words}")
    X = graph("xyc", ["xy"])
    DX = extend_alphabet(X)
    w = alpha_injectivity_witness(DX, {"c"}, 4)
    wit_ok = w is not None and [str(t) for t in w] == ["x c", "y c"]
    if wit_ok:
        rho = dict(rho_generators(DX, {"c"}, 4))
        c1, c2 = rho[w[0]], rho[w[1]]
        wit_ok = group_equal(DX, group_mul(DX, c1, c2), group_mul(DX, c2, c1))
        wit_ok &= frozenset(w) in commutation_closure(DX, {"c"}, 4)
        wit_ok &= not derived_independence(DX.alphabet, list(w)).relation
    D3 = extend_alphabet(path(3))
    absent = alpha_injectivity_witness(D3, {"c"}, 4) is None
    notes.append(f"witness {[str(t) for t in w] if w else None} valid: {wit_ok}; TFSA case absent: {absent}")
    ok = bad == 0 and lemma_bad == 0 and split_bad == 0 and wit_ok and absent
    return ok, "; ".join(notes)


CRITERIA = {
    1: ("code examples", criterion_1),
    2: ("non-TFSA remark", criterion_2),
    3: ("TFSA remark and series identity", criterion_3),
    4: ("worked factorization", criterion_4),
    5: ("Lie basis profile", criterion_5),
    6: ("series identities", criterion_6),
    7: ("Witt dimensions vs oracle", criterion_7),
    8: ("TFSA tri-equivalence", criterion_8),
    9: ("Lazard split", criterion_9),
    10: ("group layer", criterion_10),
}
BUDGET_SECONDS = 300


@dataclass(frozen=True)
class Outcome:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


def run_criterion(k: int) -> Outcome:
    title, fn = CRITERIA[k]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of that criterion only
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(k, title, bool(ok), detail, time.perf_counter() - start)


def runtime_outcome(outcomes) -> Outcome:
    total = sum(o.seconds for o in outcomes)
    return Outcome(11, "runtime budget", total < BUDGET_SECONDS,
                   f"{len(outcomes)} criteria in {total:.1f}s (budget {BUDGET_SECONDS}s)", total)


def run(only=None, out=None) -> list[Outcome]:
    """Run the selected criteria (all by default); 11 is reported when 1-10 all ran."""
    out = out or sys.stdout
    chosen = sorted(only) if only else sorted(CRITERIA) + [11]
    outcomes = []
    for k in chosen:
        if k == 11:
            continue
        o = run_criterion(k)
        print(o.line(), file=out, flush=True)
        outcomes.append(o)
    if 11 in chosen:
        if {o.number for o in outcomes} == set(CRITERIA):
            o = runtime_outcome(outcomes)
        else:
            o = Outcome(11, "runtime budget", False, "needs criteria 1-10 in the same run", 0.0)
        print(o.line(), file=out)
        outcomes.append(o)
    return outcomes


if __name__ == "__main__":
    sys.exit(0 if all(o.ok for o in run()) else 1)
