"""Command dispatch and report assembly.

Every command works on a :class:`Session`, which computes the residual data
lazily and at most once.  Reports are plain dicts with sorted keys; anything
that can differ between two runs on the same input (timing, cache traffic) is
kept in ``Report.runtime`` and only written when asked for.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import __version__, config
from .cache import DiskCache, key_for
from .errors import CrossCheckError, HypothesisError, ParseError
from .groebner import Ideal, ideal_colon, ideal_contains, radical_equal
from .invariants import (depth_regularity, ext_dimensions, hilbert_series, height,
                         is_cohen_macaulay, krull_dim, serre_condition, unmixed_check)
from .koszul import KoszulData, proper_sequence_check, sliding_depth_check
from .modules import minors
from .polynomial import format_polynomial
from .problem import ALL_ANALYSES, Problem
from . import residual as RS

REPORT_SCHEMA = "resint-report/1"
COMMANDS = ("analyze",) + ALL_ANALYSES


def claim(value, method: str) -> dict:
    """A numeric result together with the way it was obtained."""
    if isinstance(value, float) and math.isinf(value):
        value = "inf"
    return {"value": value, "method": method}


def polys(gens) -> List[str]:
    return [format_polynomial(g) for g in gens]


def mingens(I: Ideal) -> List[str]:
    if I.is_unit():
        return ["1"]
    if I.is_homogeneous():
        return polys(I.minimal_generators())
    return polys(I.trimmed().gens)


HEIGHT_METHOD = "dim R - dim R/J from Hilbert-series pole orders"


@dataclass
class Report:
    command: str
    data: dict
    exit_code: int = 0
    summary: List[str] = field(default_factory=list)
    runtime: dict = field(default_factory=dict)

    def to_json(self, with_runtime: bool = False) -> str:
        d = dict(self.data)
        if with_runtime:
            d["runtime"] = self.runtime
        return json.dumps(d, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def text(self) -> str:
        return "\n".join(self.summary) + "\n"


class Session:
    def __init__(self, problem: Problem, seed: Optional[int] = None, cache: Optional[DiskCache] = None):
        self.problem = problem
        self.cache = cache if cache is not None else DiskCache(enabled=False)
        self.ring, self.Q, self.f = problem.build()
        self.options = problem.options
        gen = problem.a.get("general")
        self.seed = seed if seed is not None else (gen.get("seed", 0) if gen else None)
        self.seed_record = None
        self._memo: Dict[str, object] = {}
        self.timing: Dict[str, float] = {}
        self.summary: List[str] = []
        self.exit_code = 0

    def memo(self, name, fn):
        if name not in self._memo:
            t = time.perf_counter()
            self._memo[name] = fn()
            self.timing[name] = round(time.perf_counter() - t, 3)
        return self._memo[name]

    @property
    def has_a(self) -> bool:
        return bool(self.problem.a)

    # -- residual data ---------------------------------------------------------

    def colon_of(self, inp: RS.ResidualInput) -> RS.ColonResult:
        parts = {"quotient": polys(inp.quotient), "a": polys(inp.a), "I": polys(inp.f)}
        key = key_for(inp.ring, parts, inp.ring.order.kind, "colon")
        hit = self.cache.get(key, "colon")
        if hit is not None:
            from .parse import parse_polynomial
            J = Ideal(inp.ring, [parse_polynomial(s, inp.ring) for s in hit["J"]], inp.quotient)
        else:
            J = ideal_colon(inp.A, inp.I)
            self.cache.put(key, {"J": polys(J.gens)})
        if J.is_unit():
            return RS.ColonResult(J, math.inf, False, inp.s)
        return RS.ColonResult(J, height(J), True, inp.s)

    def _input(self):
        """(ResidualInput, ColonResult or None); the colon is only forced for general 𝔞."""
        if not self.has_a:
            raise HypothesisError("this command needs an 'a' block in the problem")
        a = self.problem.a
        R, Q, f = self.ring, self.Q, self.f
        if "generators" in a:
            from .problem import _poly
            gens = [_poly(s, R, f"a.generators[{k}]") for k, s in enumerate(a["generators"])]
            return RS.ResidualInput.explicit(R, f, gens, Q), None
        if "matrix" in a:
            Phi = Problem.matrix(a["matrix"], R, "a.matrix")
            return RS.ResidualInput.from_matrix(R, f, Phi, Q), None
        g = a["general"]
        need = g.get("min_height", g["count"])
        failed = []
        for k in range(config.current_limits().reseed_attempts):
            sd = self.seed + k
            inp = RS.ResidualInput.general(R, f, g["count"], g["degree"], sd, Q)
            col = self.colon_of(inp)
            if col.proper and col.height >= need:
                self.seed_record = {"requested": self.seed, "used": sd, "failed": failed,
                                    "rule": f"first seed with ht(J) >= {need}"}
                return inp, col
            failed.append(sd)
        raise HypothesisError(f"no seed in {self.seed}..{self.seed + len(failed) - 1} "
                              f"gives ht(J) >= {need}")

    @property
    def inp(self) -> RS.ResidualInput:
        return self.memo("input", self._input)[0]

    @property
    def colon(self) -> RS.ColonResult:
        col = self.memo("input", self._input)[1]
        return col if col is not None else self.memo("colon", lambda: self.colon_of(self.inp))

    @property
    def I(self) -> Ideal:
        return Ideal(self.ring, self.f, self.Q)

    @property
    def R(self) -> Ideal:
        return Ideal(self.ring, [], self.Q)

    def koszul(self) -> KoszulData:
        return self.memo("koszul_data", lambda: KoszulData(self.ring, self.f, self.Q))

    def tau(self) -> RS.TauResult:
        return self.memo("tau", lambda: RS.tau(self.inp))

    def classification(self) -> RS.Classification:
        return self.memo("classify", lambda: RS.classify_residual(self.inp, self.colon))

    def kitt(self) -> RS.KittChain:
        return self.memo("kitt", lambda: RS.kitt_chain(self.inp, self.koszul()))

    def n_max(self, default: int = 12) -> int:
        return self.options.get("n_max", default)


# --------------------------------------------------------------------------
# sections


def section_colon(S: Session) -> dict:
    c = S.colon
    out = {"J": mingens(c.J), "proper": c.proper, "residual": c.is_residual,
           "height": claim(c.height, HEIGHT_METHOD), "s": S.inp.s, "flag": c.flag()}
    S.summary.append(f"colon: J has {len(out['J'])} minimal generators, ht(J) = {out['height']['value']}, "
                     f"s = {S.inp.s}" + (f" [{c.flag()}]" if c.flag() else ""))
    return out


def section_classify(S: Session) -> dict:
    cl = S.classification()
    out = {"kind": cl.kind, "algebraic": cl.algebraic, "geometric": cl.geometric,
           "arithmetic": cl.arithmetic,
           "heights": {"J": claim(cl.height_J, HEIGHT_METHOD),
                       "I+J": claim(cl.height_I_plus_J, HEIGHT_METHOD),
                       "Fitt1(I/a)+I+J": claim(cl.height_arith,
                                               HEIGHT_METHOD + "; Fitt_1(I/a) = I_{r-1}([phi|Phi])")}}
    S.summary.append(f"classify: {cl.kind} (algebraic={cl.algebraic}, geometric={cl.geometric}, "
                     f"arithmetic={cl.arithmetic})")
    return out


def section_kitt(S: Session) -> dict:
    K = S.kitt()
    inp, J = S.inp, S.colon.J
    levels = []
    for i, L in enumerate(K.levels):
        g = mingens(L)
        levels.append({"index": i, "generators": g,
                       "mu": claim(len(g), "minimal generators of a homogeneous ideal")})
    kitt = K.kitt
    top = Ideal(S.ring, minors(inp.Phi, inp.r, S.ring) if inp.s >= inp.r else [], S.Q)
    fitt0 = RS.fitting_of_quotient(inp, 0)
    checks = {
        "ascending": K.is_ascending(),
        "a in Kitt": ideal_contains(kitt, inp.A),
        "Kitt in J": ideal_contains(J, kitt),
        "sqrt(Kitt_1) = sqrt(J)": radical_equal(K.level(1), J),
        "sqrt(Kitt) = sqrt(J)": radical_equal(kitt, J),
        "Kitt_0 = I_r(Phi)": K.levels[0] == top,
        "Kitt_1 = Fitt_0(I/a)": K.level(1) == fitt0,
    }
    S.summary.append("kitt: levels mu = " + ", ".join(str(l["mu"]["value"]) for l in levels)
                     + "; " + ", ".join(f"{k}: {v}" for k, v in checks.items()))
    return {"levels": levels, "checks": checks,
            "method": "degree-r part of Gamma times the Koszul cycle subalgebra, by index level"}


def section_tau(S: Session) -> dict:
    T = S.tau()
    if not T.paths_agree:
        raise CrossCheckError("Laplace minors and zeta wedges give different tau generators")
    J = S.colon.J
    out = {"tau": mingens(T.tau),
           "mu": claim(T.mu, "minimal generators of a homogeneous ideal"),
           "bound": claim(T.bound, "s + C(s, r)"),
           "mu_ok": T.mu_ok, "paths_agree": T.paths_agree,
           "tau in J": ideal_contains(J, T.tau),
           "sqrt(tau) = sqrt(J)": radical_equal(T.tau, J),
           "height": claim(height(T.tau), HEIGHT_METHOD)}
    S.summary.append(f"tau: mu = {T.mu} <= {T.bound}: {T.mu_ok}; tau in J: {out['tau in J']}; "
                     f"sqrt(tau) = sqrt(J): {out['sqrt(tau) = sqrt(J)']}")
    return out


def section_certify(S: Session) -> dict:
    hyps = S.options.get("hypotheses", RS.DEFAULT_HYPOTHESES)
    cert = S.memo("certify", lambda: RS.free_approach_certificate(
        S.inp, hyps, lambda: S.colon, S.n_max(),
        lambda: S.classification() if S.colon.proper else None,
        stop_early=S.options.get("stop_early", False)))
    out = cert.as_dict()
    out["tau"] = mingens(cert.tau)
    out["diagnostics"] = cert.diagnostics()
    out["length"] = S.inp.s
    if cert.issued:
        S.summary.append(f"certify: free approach of length {S.inp.s} certified")
    else:
        S.exit_code = max(S.exit_code, 1)
        S.summary.append("certify: DENIED; " + "; ".join(cert.diagnostics()))
    return out


def section_ericci(S: Session) -> dict:
    dl = S.options.get("ericci_degrees")
    d = dl["d"] if dl else S.inp.d
    l = dl["l"] if dl else S.inp.l
    res = RS.ericci(S.ring, d, l, S.Q, seed=S.seed or 0)
    out = {"d": list(d), "l": list(l),
           "ericci": claim(res.value, res.method),
           "generic_cross_check": claim(res.generic, "multiplicity of a seeded generic residual "
                                                     "of a complete intersection"),
           "seeds_tried": res.seeds_tried, "failed_seeds": res.failed_seeds}
    line = f"ericci(d={list(d)}, l={list(l)}) = {res.value}"
    if S.has_a and S.colon.proper:
        e = hilbert_series(S.colon.J).multiplicity()
        out["e(R/J)"] = claim(e, "hilbert-series numerator at 1")
        out["e(R/J) <= ericci"] = e <= res.value
        line += f"; e(R/J) = {e}"
    S.summary.append("ericci: " + line)
    return out


def section_layout(S: Session) -> dict:
    inp = S.inp
    n_max = S.n_max(15)
    F = RS.f_complex_layout(inp.r, inp.s, inp.d, inp.l)
    out = {"F": F.as_dict()}
    T = S.tau().tau
    if T.is_homogeneous():
        hic = RS.hilbert_identity_check(F, T, n_max)
        out["F"]["hilbert_identity_R/tau"] = {"holds": hic.holds, "n_max": n_max,
                                              "first_failure": hic.first_failure}
    try:
        q = RS.q_complex_layout(inp, seed=S.seed or 0)
    except HypothesisError as e:
        out["Q"] = {"available": False, "reason": str(e)}
        S.summary.append(f"layout: F = [{'; '.join(F.describe())}]; Q unavailable ({e})")
        return out
    qd = q.layout.as_dict()
    qd.update({"available": True, "method": q.method, "generators": polys(q.generators)})
    if S.colon.proper:
        hic = RS.hilbert_identity_check(q.layout, S.colon.J, n_max)
        qd["hilbert_identity_R/J"] = {"holds": hic.holds, "n_max": n_max,
                                      "first_failure": hic.first_failure}
    out["Q"] = qd
    S.summary.append(f"layout: F = [{'; '.join(F.describe())}]; Q = [{'; '.join(q.layout.describe())}]")
    return out


def _series_record(M, n_max: int) -> dict:
    hs = hilbert_series(M)
    return {"numerator": hs.numerator_string(),
            "dim": claim(hs.dimension(), "pole order at z = 1"),
            "multiplicity": claim(hs.multiplicity(), "reduced numerator at z = 1"),
            "values": claim(hs.coefficients(n_max), "series expansion")}


def section_hilbert(S: Session) -> dict:
    n_max = S.n_max(10)
    default = ["R", "I"] + (["J"] if S.has_a else [])
    out = {}
    for t in S.options.get("hilbert_targets", default):
        if t == "R":
            M = S.R
        elif t == "I":
            M = S.I
        elif t == "a":
            M = S.inp.A
        elif t == "J":
            M = S.colon.J
        else:
            M = S.tau().tau
        out[f"{t}" if t == "R" else f"R/{t}"] = _series_record(M, n_max)
    S.summary.append("hilbert: " + "; ".join(f"{k}: dim {v['dim']['value']}, e {v['multiplicity']['value']}"
                                            for k, v in out.items()))
    return out


def section_koszul(S: Session) -> dict:
    K = S.koszul()
    r = len(S.f)
    ps = proper_sequence_check(S.ring, S.f, S.Q)
    out = {"r": r, "grade": claim(K.grade, "r - max{i : H_i != 0}"),
           "homology_vanishes": {str(i): K.homology_vanishes(i) for i in range(1, r + 1)},
           "cycle_generators": {str(i): len(K.cycles(i)) for i in range(1, r + 1)},
           "proper_sequence": {"holds": bool(ps.holds),
                               "witness": None if ps.witness is None else
                               {"prefix": ps.witness[0], "homology": ps.witness[1],
                                "cycle": list(ps.witness[2])}},
           "is_complex": K.is_complex()}
    if "sliding_depth" in S.options:
        k = S.options["sliding_depth"]
        out["SD"] = {"k": k, "holds": bool(sliding_depth_check(S.ring, S.f, k, "SD", S.Q, K))}
    S.summary.append(f"koszul: grade {K.grade}, proper sequence in given order: {bool(ps.holds)}")
    return out


def section_invariants(S: Session) -> dict:
    R = S.R
    exts = ext_dimensions(R)
    k = S.options.get("serre_k", S.inp.s if S.has_a else 2)
    ambient = {"dim": claim(krull_dim(R), "pole order at z = 1"),
               "ext_dimensions": claim({str(i): v for i, v in exts.items()},
                                       "dim Ext^i_P(R, P) via Hilbert series, -1 when zero"),
               f"S_{k}": serre_condition(R, k, exts), "cohen_macaulay": is_cohen_macaulay(R, exts)}
    I = S.I
    out = {"R": ambient,
           "R/I": {"height": claim(height(I), HEIGHT_METHOD),
                   "dim": claim(krull_dim(I), "pole order at z = 1")}}
    if S.has_a and S.colon.proper:
        J = S.colon.J
        dd = depth_regularity(J)
        ej = ext_dimensions(J)
        hs = hilbert_series(J)
        out["R/J"] = {
            "height": claim(S.colon.height, HEIGHT_METHOD),
            "dim": claim(hs.dimension(), "pole order at z = 1"),
            "multiplicity": claim(hs.multiplicity(), "reduced numerator at z = 1"),
            "depth": claim(dd.depth, "dim P - pd_P (Auslander-Buchsbaum)"),
            "pd_P": claim(dd.pd, "minimal free resolution over P"),
            "regularity": claim(dd.regularity, "Betti table of the minimal resolution"),
            "unmixed": unmixed_check(J, ej),
            "cohen_macaulay": is_cohen_macaulay(J, ej)}
        S.summary.append(f"invariants: R/J dim {hs.dimension()}, depth {dd.depth}, e {hs.multiplicity()}, "
                         f"unmixed {out['R/J']['unmixed']}")
    else:
        S.summary.append(f"invariants: dim R = {ambient['dim']['value']}, "
                         f"ht I = {out['R/I']['height']['value']}")
    return out


SECTIONS = {"colon": section_colon, "classify": section_classify, "kitt": section_kitt,
            "tau": section_tau, "certify": section_certify, "ericci": section_ericci,
            "layout": section_layout, "hilbert": section_hilbert, "koszul": section_koszul,
            "invariants": section_invariants}


def run(problem: Problem, command: str, seed: Optional[int] = None,
        cache: Optional[DiskCache] = None) -> Report:
    """Run one command; exceptions from the engines propagate to the caller."""
    if command not in COMMANDS:
        raise ParseError(f"unknown command {command!r}")
    t0 = time.perf_counter()
    S = Session(problem, seed, cache)
    S.summary.append(f"resint {__version__} {command} {problem.name or '<unnamed>'}")
    lim = {k: v for k, v in problem.limits.items()}
    names = [c for c in ALL_ANALYSES if c in problem.analyses] if command == "analyze" else [command]
    results = {}
    with config.limits(**lim):
        for name in names:
            results[name] = SECTIONS[name](S)
    data = {"schema": REPORT_SCHEMA,
            "engine": {"name": "resint", "version": __version__},
            "command": command,
            "problem": problem.normalized().to_dict(),
            "seed": S.seed_record if S.seed_record else ({"requested": S.seed} if S.seed is not None else None),
            "results": results,
            "status": {"exit_code": S.exit_code,
                       "outcome": "ok" if S.exit_code == 0 else "hypothesis-failed"}}
    total = round(time.perf_counter() - t0, 3)
    runtime = {"seconds": total, "steps": dict(S.timing), "cache": S.cache.summary()}
    S.summary.append(f"finished in {total:.2f} s; cache hits: {len(S.cache.hits)}")
    return Report(command, data, S.exit_code, S.summary, runtime)
