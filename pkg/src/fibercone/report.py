"""Execute scenario tasks and render deterministic text or JSON reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyViolation, FiberConeError, PreconditionError
from .fcseq import find_weak_fc_sequence, reduction_from_sequence
from .field import CoefficientField
from .filtration import (Filtration, filtration_adic, filtration_quotient,
                         filtration_rescale, filtration_seeded, is_nilpotent)
from .ideals import AmbientRing, Ideal
from .invariants import (differences, fiber_hilbert, fiber_hilbert_value,
                         reduction_is_minimal_part, spread_certificate, verify_reduction)
from .parallel import parallelism
from .scenario import Scenario, format_scenario
from .theorems import (cm_lemma41, cm_report, cor43_scan, multiplicity_lemma32,
                       multiplicity_thm33, prop31_lengths, chain_multiplicities)

SEEDED_TASKS = ("report", "multiplicity", "cm", "fc-sequence", "cor43-scan")


@dataclass(frozen=True)
class Config:
    prime: int = 32003
    rationals: bool = False
    seed: int | None = None
    n_max: int = 40
    width: int | None = None
    attempts: int = 32
    t_max: int = 8
    format: str = "text"
    jobs: int = 1  # scheduling only; never part of the output

    @property
    def field(self) -> CoefficientField:
        return CoefficientField(None if self.rationals else self.prime)

    def as_dict(self) -> dict:
        return {"field": str(self.field), "seed": self.seed, "n_max": self.n_max,
                "width": self.width, "attempts": self.attempts, "t_max": self.t_max}


class TaskFailure(FiberConeError):
    """A module error raised while running one task; ``cause`` is the original."""

    def __init__(self, index: int, task, cause: Exception):
        where = f"task {index + 1} ({task.kind}, line {task.line})"
        super().__init__(f"{where}: {type(cause).__name__}: {cause}")
        self.cause = cause


# ---------------------------------------------------------------------------
# building objects from declarations
# ---------------------------------------------------------------------------

@dataclass
class Workspace:
    ring: AmbientRing
    ideals: dict
    filtrations: dict


def build(s: Scenario, config: Config) -> Workspace:
    poly_ring = AmbientRing(s.variables, config.field).poly
    A = AmbientRing(s.variables, config.field,
                    [poly_ring.from_terms(dict(t)) for t in s.relations])
    ideals: dict = {}
    for d in s.ideals:
        if d.is_expr:
            total = None
            for prod in d.expr:
                term = A.unit_ideal
                for name, power in prod:
                    term = term * ideals[name] ** power
                total = term if total is None else total + term
            ideals[d.name] = total
        else:
            ideals[d.name] = A.ideal([A.poly.from_terms(dict(t)) for t in d.gens])
    filts: dict = {}
    for d in s.filtrations:
        if d.kind == "adic":
            F = filtration_adic(ideals[d.args[0]], d.name)
        elif d.kind == "seeded":
            seeds = [ideals[n] for n in d.args[0]]
            if d.checked:
                F = filtration_seeded(seeds, d.args[1], d.name)
            else:
                F = Filtration(A, "seeded", tuple(seeds), d.args[1], d.name)
        elif d.kind == "rescale":
            F = filtration_rescale(filts[d.args[0]], d.args[1], d.name)
        else:
            base = filts[d.args[0]]
            F = filtration_quotient(base, Ideal(base.ring, ideals[d.args[1]].gens), d.name)
        filts[d.name] = F
    return Workspace(A, ideals, filts)


# ---------------------------------------------------------------------------
# rendering helpers
# ---------------------------------------------------------------------------

def _poly_str(coeffs) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _keys(d: dict) -> dict:
    return {str(k): v for k, v in d.items()}


# ---------------------------------------------------------------------------
# tasks
# ---------------------------------------------------------------------------

class _Runner:
    def __init__(self, s: Scenario, config: Config):
        self.s = s
        self.config = config
        self.ws = build(s, config)
        self.agreements: list = []
        self._seqs: dict = {}

    def agree(self, index: int, check: str, ok: bool):
        self.agreements.append({"task": index + 1, "check": check, "ok": bool(ok)})

    def operands(self, task):
        F = self.ws.filtrations[task.args[0]]
        if len(task.args) > 1:
            J = Ideal(F.ring, self.ws.ideals[task.args[1]].gens)
            jname = task.args[1]
        else:
            J, jname = F.ring.max_ideal, "maximal ideal"
        return F, J, jname

    def sequence(self, F, J, pool_name=None):
        key = (F.label, J, pool_name)
        if key not in self._seqs:
            pool = None
            if pool_name is not None:
                pool = Ideal(F.ring, self.ws.ideals[pool_name].gens)
            c = self.config
            self._seqs[key] = find_weak_fc_sequence(F, J, pool, c.seed, c.attempts,
                                                    n_max=c.n_max)
        return self._seqs[key]

    # -- sections --------------------------------------------------------
    def spread_section(self, F) -> dict:
        cert = spread_certificate(F, self.config.n_max, self.config.width)
        out = {"spread": cert.spread, "nilpotent": cert.nilpotent}
        if cert.nilpotent:
            out["nilpotency_index"] = is_nilpotent(F)[1]
        else:
            out["spread_window"] = list(cert.window)
            out["maximal_ideal_values"] = list(cert.values)
        return out

    def hilbert_section(self, i, F, J) -> dict:
        fh = fiber_hilbert(F, J, self.config.n_max, self.config.width)
        ell = fh.spread
        tail = list(fh.certified_values)
        const = differences(tail, ell - 1)
        self.agree(i, "fiber Hilbert degree matches spread",
                   fh.degree is not None and fh.degree + 1 == ell)
        self.agree(i, "difference of order spread vanishes on the certified window",
                   not any(differences(tail, ell)))
        self.agree(i, "difference of order spread-1 equals the multiplicity",
                   all(v == fh.multiplicity for v in const))
        return {"window": list(fh.window), "values": list(fh.values),
                "certified_window": list(fh.certified),
                "polynomial": _poly_str(fh.poly), "h0": fiber_hilbert_value(F, J, 0)}

    def sequence_section(self, i, F, J, seq) -> dict:
        certs = []
        for c in seq.certificates:
            difference_ok = all(a == b for a, b in c.quotient_differences.values())
            self.agree(i, f"step {c.step}: fiber Hilbert of the quotient is the first difference",
                       difference_ok)
            self.agree(i, f"step {c.step}: spread drops by one", c.dim_drop[1] == c.dim_drop[0] - 1)
            if c.superficial is not None:
                self.agree(i, f"step {c.step}: element is superficial", c.superficial.holds)
            certs.append({
                "step": c.step, "element": str(c.element), "attempt": c.attempt,
                "coefficients": [str(x) for x in c.coefficients],
                "fc2": c.fc2.holds, "annihilator": str(c.fc2.annihilator),
                "saturation": str(c.fc2.saturation),
                "fc1": {"holds": c.fc1_window.holds, "m": list(c.fc1_window.m_range),
                        "n": list(c.fc1_window.n_range), "tag": c.fc1_window.tag},
                "superficial_witness": c.superficial_witness,
                "dim_drop": list(c.dim_drop),
                "quotient_differences": {str(n): list(v)
                                         for n, v in c.quotient_differences.items()},
            })
        self.agree(i, "sequence length equals spread", len(seq.elements) == seq.spread)
        return {"seed": seq.seed, "elements": [str(x) for x in seq.elements],
                "maximal": seq.maximal, "rejected_candidates": seq.rejected,
                "certificates": certs}

    def reduction_section(self, i, seq) -> dict:
        red = reduction_from_sequence(seq, self.config.n_max)
        minimal = reduction_is_minimal_part(red)
        self.agree(i, "reduction meets m I_1 in m times itself", minimal)
        return {"generators": [str(g) for g in red.generators], "reduction_number": red.r,
                "first_success": red.first_success, "minimal_part": minimal}

    def multiplicity_section(self, i, F, J, seq) -> dict:
        m = multiplicity_thm33(F, J, seq)
        self.agree(i, "multiplicity: interpolation = colon length", m.agreement)
        out = {"multiplicity_limit": m.e_limit,
               "multiplicity_thm33": {"value": m.e_thm33, "by_n": _keys(m.values)}}
        if seq.spread == 1:
            e, route = multiplicity_lemma32(F, J, seq.elements[0])
            self.agree(i, "multiplicity: spread-one formula", e == m.e_limit)
            out["multiplicity_lemma32"] = {"value": e, "route": route}
        return out

    def cm_section(self, i, F, J, seq) -> dict:
        rep = cm_report(F, J, seq)
        self.agree(i, "Cohen-Macaulay: ideal conditions = parameter length test",
                   rep.agreement)
        out = {"reduction_number": rep.r,
               "cm_thm42": {"verdict": rep.route_A.verdict,
                            "condition_i": _keys(rep.route_A.cond_i),
                            "condition_ii": _keys(rep.route_A.cond_ii)},
               "cm_direct": {"L": rep.route_B.L, "e": rep.route_B.e,
                             "verdict": rep.route_B.verdict}}
        if seq.spread == 1:
            try:
                verdict, detail = cm_lemma41(F, J, seq.elements[0])
            except PreconditionError as exc:
                out["cm_lemma41"] = {"skipped": str(exc)}
            else:
                self.agree(i, "Cohen-Macaulay: spread-one criterion", verdict == rep.verdict)
                out["cm_lemma41"] = {"verdict": verdict, "by_n": _keys(detail)}
        out["agreement"] = rep.agreement
        return out

    def quotient_chain_section(self, i, F, J, seq) -> list:
        out = []
        for k in range(len(seq.elements)):
            p = prop31_lengths(F, J, seq, k)
            mults = chain_multiplicities(F, J, seq, k)
            self.agree(i, f"lengths ordered along the quotient chain (i={k})", p.ordered)
            self.agree(i, f"length equality matches membership test (i={k})", p.consistent)
            self.agree(i, f"multiplicity invariant along the quotient chain (i={k})",
                       len(set(mults)) == 1)
            out.append({"i": k, "L_primed": p.L_primed, "L_i": p.L_i, "L": p.L,
                        "membership": _keys(p.membership), "multiplicities": list(mults)})
        return out

    # -- task kinds ------------------------------------------------------
    def run_task(self, i, task) -> dict:
        F, J, jname = self.operands(task)
        out = {"task": task.kind, "filtration": task.args[0], "J": jname}
        pool = task.option("pool")
        if task.kind == "spread":
            out.update(self.spread_section(F))
            return out
        if task.kind == "reduction" and len(task.args) > 1:
            red = verify_reduction(F, self.ws.ideals[task.args[1]].gens, self.config.n_max)
            out["J"] = None
            out["candidate"] = task.args[1]
            out["is_reduction"] = bool(red)
            if red:
                out.update({"reduction_number": red.r, "first_success": red.first_success})
            else:
                out["checked_up_to"] = red.bound
            return out
        if task.kind == "cor43-scan":
            res = cor43_scan(F, J, self.config.t_max, self.config.seed, self.config.attempts,
                             self.config.n_max)
            out.update({"T0": res.T0, "verified": list(res.verified),
                        "verdicts": {str(T): list(v) for T, v in res.verdicts.items()}})
            return out
        spread = self.spread_section(F)
        out.update(spread)
        seq = self.sequence(F, J, pool)
        if task.kind in ("report", "fc-sequence"):
            out["sequence"] = self.sequence_section(i, F, J, seq)
        if spread["spread"] == 0:
            if task.kind != "fc-sequence":
                out["skipped"] = ("multiplicity, reduction and Cohen-Macaulay checks need "
                                  "analytic spread >= 1; the filtration is nilpotent")
            return out
        if task.kind == "fc-sequence":
            return out
        if task.kind == "reduction":
            out.update(self.reduction_section(i, seq))
            return out
        if task.kind == "report":
            out["fiber_hilbert"] = self.hilbert_section(i, F, J)
            out.update(self.reduction_section(i, seq))
        if task.kind in ("report", "multiplicity"):
            out.update(self.multiplicity_section(i, F, J, seq))
        if task.kind in ("report", "cm"):
            out.update(self.cm_section(i, F, J, seq))
        if task.kind == "report":
            out["quotient_chain"] = self.quotient_chain_section(i, F, J, seq)
            mine = [a["ok"] for a in self.agreements if a["task"] == i + 1]
            out["agreement"] = all(mine)
        return out


@dataclass
class Report:
    scenario: str
    config: dict
    results: list
    agreements: list
    seed: int | None
    name: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(a["ok"] for a in self.agreements)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 3

    def as_dict(self) -> dict:
        return {"scenario": {"name": self.name, "text": self.scenario},
                "config": self.config, "results": self.results,
                "agreements": self.agreements, "seed": self.seed}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"scenario: {self.name}")
        lines.append(f"field: {self.config['field']}  seed: {self.seed}")
        for raw in self.scenario.splitlines():
            lines.append(f"  | {raw}")
        for k, res in enumerate(self.results, start=1):
            lines.append(f"[task {k}] {res['task']} {res['filtration']}"
                         + (f" J={res['J']}" if res.get("J") else ""))
            for key, val in res.items():
                if key in ("task", "filtration", "J"):
                    continue
                _render(lines, key, val, 1)
        bad = [a for a in self.agreements if not a["ok"]]
        lines.append(f"cross-checks: {len(self.agreements) - len(bad)}/{len(self.agreements)} "
                     "passed")
        for a in bad:
            lines.append(f"  FAILED (task {a['task']}): {a['check']}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def _render(lines: list, key: str, val, depth: int):
    pad = "  " * depth
    if isinstance(val, dict):
        if all(not isinstance(v, (dict, list)) or
               (isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v))
               for v in val.values()) and len(val) <= 6:
            inner = ", ".join(f"{k}: {_scalar(v)}" for k, v in val.items())
            lines.append(f"{pad}{key}: {{{inner}}}")
            return
        lines.append(f"{pad}{key}:")
        for k, v in val.items():
            _render(lines, str(k), v, depth + 1)
    elif isinstance(val, list) and any(isinstance(x, dict) for x in val):
        lines.append(f"{pad}{key}:")
        for x in val:
            _render(lines, "-", x, depth + 1)
    else:
        lines.append(f"{pad}{key}: {_scalar(val)}")


def run_report(s: Scenario, config: Config, name: str = "") -> Report:
    """Run every task in order; raises TaskFailure on module errors."""
    if config.seed is None and any(t.kind in SEEDED_TASKS or
                                   (t.kind == "reduction" and len(t.args) == 1)
                                   for t in s.tasks):
        raise PreconditionError("a randomness seed is required for tasks that build "
                                "weak-(FC)-sequences (use --seed)")
    with parallelism(config.jobs):
        runner = _Runner(s, config)
        results = []
        for i, task in enumerate(s.tasks):
            try:
                results.append(runner.run_task(i, task))
            except FiberConeError as exc:
                raise TaskFailure(i, task, exc) from exc
    return Report(format_scenario(s), config.as_dict(), results, runner.agreements,
                  config.seed, name)
