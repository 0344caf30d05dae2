"""Documents, golden tables, fixtures and certificate serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Any

from .enumerator import Axiom, CaseReport, Certificate, SlotBound
from .hj_core import HJString, format_rational, hj_expansion, profile
from .inequality import CaseInstance
from .obstruction import (
    Configuration,
    Elimination,
    EliminationReason,
    coprime_failure,
    eliminate,
    fstar_ksq,
)
from .rdp import RdpVerdict

KINDS = ("table", "profile", "case", "certificate", "rdp", "fixture")
FORMATS = ("text", "structured")

# row order of the published tables
TABLE_ROWS = {
    1: [
        (2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 4), (2, 4, 2), (3, 2, 3), (2, 3, 3),
        (2, 2, 5), (2, 5, 2), (3, 2, 4), (2, 3, 4), (2, 4, 3), (3, 3, 3),
    ],
    2: [(2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)],
}

FIXTURES = {
    "ishida": {
        "description": "3 points of type 1/3(1,2) and one of type 1/7(1,3); H_1(S^0,Z) = Z/3",
        "types": [(3, 2), (3, 2), (3, 2), (7, 3)],
    },
    "keum": {
        "description": "3 points of type 1/7(1,3); H_1(S^0,Z) = Z/7",
        "types": [(7, 3), (7, 3), (7, 3)],
    },
}


class UnknownFixtureError(KeyError):
    pass


@dataclass
class ReportDocument:
    kind: str
    payload: dict = field(default_factory=dict)
    format: str = "structured"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown document kind {self.kind!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")

    def serialize(self) -> str:
        return dumps({"kind": self.kind, "format": self.format, "payload": self.payload})

    @classmethod
    def parse(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        return cls(data["kind"], data["payload"], data["format"])

    def render(self) -> str:
        if self.format == "structured":
            return self.serialize()
        return RENDERERS[self.kind](self.payload)


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q(x) -> str:
    return format_rational(x)


# -- strings and tables ------------------------------------------------------


def _tuple_text(nums) -> str:
    return "(" + ",".join(str(n) for n in nums) + ")"


def profile_payload(s: HJString) -> dict:
    p = profile(s)
    return {
        "string": list(s.entries),
        "order": p.order,
        "discrepancies": [_q(a) for a in p.discrepancies],
        "discrepancy_numerators": list(p.discrepancy_numerators),
        "d_squared": _q(p.d_squared),
        "contribution": _q(p.contribution),
    }


def cmd_string(spec: str, fmt: str = "structured") -> ReportDocument:
    s = HJString.parse(spec)
    return ReportDocument("profile", profile_payload(s), fmt)


def table_row(entries) -> list[str]:
    """One row in the published layout: scaled discrepancies and D^2 over |G_p|."""
    p = profile(HJString(entries))
    dsq_num = sum(num * (n - 2) for num, n in zip(p.discrepancy_numerators, entries))
    dsq = "0" if dsq_num == 0 else f"-{dsq_num}/{p.order}"
    return [
        _tuple_text(entries),
        str(p.order),
        f"{_tuple_text(p.discrepancy_numerators)}/{p.order}",
        dsq,
        _q(p.contribution),
    ]


def cmd_table(which: int, fmt: str = "structured") -> ReportDocument:
    if which not in TABLE_ROWS:
        raise ValueError(f"no table {which}; choose 1 or 2")
    rows = [profile_payload(HJString(e)) for e in TABLE_ROWS[which]]
    return ReportDocument("table", {"table": which, "rows": rows}, fmt)


def _render_table(payload: dict) -> str:
    which = payload["table"]
    k = 3 if which == 1 else 2
    names = ",".join(f"n{j}" for j in range(1, k + 1))
    coeffs = ",".join(f"a{j}" for j in range(1, k + 1))
    lines = ["\t".join([f"({names})", "|G_p|", f"({coeffs})", "D_p^2", "1/|G_p|+D_p^2/3"])]
    for row in payload["rows"]:
        lines.append("\t".join(table_row(tuple(row["string"]))))
    return "\n".join(lines) + "\n"


def _render_profile(payload: dict) -> str:
    order = payload["order"]
    lines = [
        f"string          {_tuple_text(payload['string'])}",
        f"order           {order}",
        f"discrepancies   {_tuple_text(payload['discrepancy_numerators'])}/{order}"
        f" = ({', '.join(payload['discrepancies'])})",
        f"D_p^2           {payload['d_squared']}",
        f"contribution    {payload['contribution']}",
    ]
    return "\n".join(lines) + "\n"


# -- fixtures ----------------------------------------------------------------


def cmd_fixture(name: str, fmt: str = "structured") -> ReportDocument:
    if name not in FIXTURES:
        raise UnknownFixtureError(name)
    spec = FIXTURES[name]
    strings = [hj_expansion(n, q) for n, q in spec["types"]]
    dets = [profile(s).order for s in strings]
    failure = coprime_failure(dets)
    # Picard number one: c2 = (number of exceptional curves) + 3
    c2 = sum(len(s) for s in strings) + 3
    config = Configuration(strings)
    case = CaseInstance.make(c2, config.lengths)
    elim = eliminate(case, config)
    table_match = []
    for s in strings:
        canon = s.canonical()
        which = next((w for w, rows in TABLE_ROWS.items() if canon.entries in rows), None)
        table_match.append({"string": list(canon.entries), "table": which})
    payload = {
        "name": name,
        "description": spec["description"],
        "types": [f"1/{n}({1},{q})" for n, q in spec["types"]],
        "strings": [list(s.entries) for s in strings],
        "profiles": [profile_payload(s.canonical()) for s in strings],
        "table_rows": table_match,
        "determinants": dets,
        "coprimality": None if failure is None else failure.to_dict(),
        "c2": c2,
        "lhs": _q(case.lhs),
        "rhs": _q(sum((profile(s).contribution for s in strings), Fraction(0))),
        "det_R": prod(dets),
        "fstar_ksq": _q(fstar_ksq(case.ksq_prime, config)),
        "elimination": elimination_to_dict(elim),
    }
    return ReportDocument("fixture", payload, fmt)


def _render_fixture(payload: dict) -> str:
    lines = [
        f"fixture         {payload['name']}: {payload['description']}",
        f"types           {', '.join(payload['types'])}",
        f"strings         {' '.join(_tuple_text(s) for s in payload['strings'])}",
        f"determinants    {payload['determinants']}",
    ]
    cop = payload["coprimality"]
    if cop is None:
        lines.append("coprimality     pass")
    else:
        lines.append(f"coprimality     fails on ({cop['det_i']}, {cop['det_j']}), gcd {cop['gcd']}")
    lines += [
        f"c2              {payload['c2']}",
        f"LHS / RHS       {payload['lhs']} / {payload['rhs']}",
        f"det R * (f*K)^2 {payload['det_R']} * {payload['fstar_ksq']}",
        f"reason          {_render_reason(payload['elimination']['reason'])}",
        f"audit           {'; '.join(_render_reason(r) for r in payload['elimination']['audit'])}",
    ]
    return "\n".join(lines) + "\n"


# -- reasons, reports, certificates -------------------------------------------


def elimination_to_dict(elim: Elimination) -> dict:
    return {"reason": elim.reason.to_dict(), "audit": [r.to_dict() for r in elim.audit]}


def elimination_from_dict(data: dict) -> Elimination:
    return Elimination(
        EliminationReason.from_dict(data["reason"]),
        tuple(EliminationReason.from_dict(r) for r in data["audit"]),
    )


def _render_reason(d: dict) -> str:
    fields = ", ".join(f"{k}={v}" for k, v in d.items() if k != "kind")
    return f"{d['kind']}({fields})" if fields else d["kind"]


def _config_to_list(cfg: Configuration) -> list[list[int]]:
    return [list(s.entries) for s in cfg]


def _config_from_list(data) -> Configuration:
    return Configuration(HJString(s) for s in data)


def report_to_dict(rep: CaseReport) -> dict:
    rhs_by_cfg = dict(rep.inequality_survivors)
    survivors = []
    for cfg, elim in rep.eliminations:
        dets = [profile(s).order for s in cfg]
        survivors.append(
            {
                "strings": _config_to_list(cfg),
                "rhs": _q(rhs_by_cfg[cfg]),
                "dets": dets,
                "det_R": prod(dets),
                "fstar_ksq": _q(fstar_ksq(rep.case.ksq_prime, cfg)),
                "reason": elim.reason.to_dict(),
                "audit": [r.to_dict() for r in elim.audit],
            }
        )
    witness = rep.best_coprime_witness
    return {
        "c2": rep.case.c2,
        "ksq": rep.case.ksq_prime,
        "r": rep.case.r,
        "partition": list(rep.case.partition),
        "lhs": _q(rep.lhs),
        "survivors": survivors,
        "exhaustiveness": [
            {
                "length": b.length,
                "threshold": _q(b.threshold),
                "max_weight": b.max_weight,
                "candidates": b.candidates,
            }
            for b in rep.exhaustiveness
        ],
        "best_coprime": {
            "value": _q(rep.best_coprime),
            "strings": _config_to_list(witness),
            "terms": [_q(profile(s).contribution) for s in witness],
        },
    }


def report_from_dict(data: dict) -> CaseReport:
    case = CaseInstance.make(data["c2"], data["partition"])
    survivors, elims = [], []
    for item in data["survivors"]:
        cfg = _config_from_list(item["strings"])
        survivors.append((cfg, Fraction(item["rhs"])))
        elims.append((cfg, elimination_from_dict(item)))
    bounds = tuple(
        SlotBound(b["length"], Fraction(b["threshold"]), b["max_weight"], b["candidates"])
        for b in data["exhaustiveness"]
    )
    best = data["best_coprime"]
    return CaseReport(
        case,
        Fraction(data["lhs"]),
        tuple(survivors),
        tuple(elims),
        bounds,
        Fraction(best["value"]),
        _config_from_list(best["strings"]),
    )


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "version": cert.version,
        "axioms": [
            {
                "name": a.name,
                "statement": a.statement,
                "checks": [{"r": r, "sum": _q(total), "holds": ok} for r, total, ok in a.checks],
            }
            for a in cert.axioms
        ],
        "scan": list(cert.scan),
        "notes": list(cert.notes),
        "positivity_filter": cert.positivity_filter,
        "cases": [report_to_dict(rep) for rep in cert.case_reports],
        "verdict": cert.verdict,
    }


def certificate_from_dict(data: dict) -> Certificate:
    axioms = tuple(
        Axiom(
            a["name"],
            a["statement"],
            tuple((c["r"], Fraction(c["sum"]), c["holds"]) for c in a["checks"]),
        )
        for a in data["axioms"]
    )
    return Certificate(
        data["version"],
        axioms,
        tuple(data["scan"]),
        tuple(data["notes"]),
        tuple(report_from_dict(c) for c in data["cases"]),
        data["verdict"],
        data["positivity_filter"],
    )


def certificate_document(cert: Certificate, fmt: str = "structured") -> ReportDocument:
    return ReportDocument("certificate", certificate_to_dict(cert), fmt)


def case_document(reports: list[CaseReport], fmt: str = "structured") -> ReportDocument:
    return ReportDocument("case", {"cases": [report_to_dict(r) for r in reports]}, fmt)


def _render_case_entry(case: dict) -> list[str]:
    parts = "+".join(str(p) for p in case["partition"])
    lines = [
        f"c2={case['c2']} K'^2={case['ksq']} r={case['r']} partition={parts} "
        f"LHS={case['lhs']} survivors={len(case['survivors'])}"
    ]
    for item in case["survivors"]:
        cfg = "+".join(_tuple_text(s) for s in item["strings"])
        lines.append(f"  {cfg}  RHS={item['rhs']}  -> {_render_reason(item['reason'])}")
    best = case["best_coprime"]
    cfg = "+".join(_tuple_text(s) for s in best["strings"])
    terms = " + ".join(best["terms"]).replace("+ -", "- ")
    lines.append(f"  best coprime: {cfg}  {terms} = {best['value']}")
    return lines


def _render_cases(payload: dict) -> str:
    lines = []
    for case in payload["cases"]:
        lines += _render_case_entry(case)
    return "\n".join(lines) + "\n"


def _render_certificate(payload: dict) -> str:
    lines = [f"certificate version {payload['version']}", "axioms:"]
    lines += [f"  {a['name']}: {a['statement']}" for a in payload["axioms"]]
    lines.append("scan:")
    lines += [f"  {s}" for s in payload["scan"]]
    for case in payload["cases"]:
        lines += _render_case_entry(case)
    lines += [f"note: {n}" for n in payload["notes"]]
    c2_values = sorted({c["c2"] for c in payload["cases"]})
    lines.append(f"c2 values covered: {c2_values[0]}..{c2_values[-1]} ({len(c2_values)})" if c2_values else "c2 values covered: none")
    lines.append(f"verdict: {'verified' if payload['verdict'] else 'FAILED'}")
    return "\n".join(lines) + "\n"


# -- rdp -----------------------------------------------------------------------


def rdp_document(verdicts: list[RdpVerdict], fmt: str = "structured") -> ReportDocument:
    items = []
    for v in verdicts:
        items.append(
            {
                "ksq": v.ksq,
                "lattice": str(v.lattice),
                "rank": v.lattice.rank,
                "det": v.lattice.det,
                "m": v.m,
                "ruled_out": v.ruled_out,
                "note": v.note,
                "case": None
                if v.case is None
                else {"c2": v.case.c2, "r": v.case.r, "partition": list(v.case.partition)},
            }
        )
    return ReportDocument("rdp", {"candidates": items}, fmt)


def _render_rdp(payload: dict) -> str:
    lines = []
    for item in payload["candidates"]:
        status = "ruled out" if item["ruled_out"] else "open"
        lines.append(
            f"K'^2={item['ksq']}  R={item['lattice']}  det={item['det']}  m={item['m']}  {status}: {item['note']}"
        )
    return "\n".join(lines) + "\n"


RENDERERS = {
    "table": _render_table,
    "profile": _render_profile,
    "case": _render_cases,
    "certificate": _render_certificate,
    "rdp": _render_rdp,
    "fixture": _render_fixture,
}
