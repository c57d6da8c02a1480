"""Command-line front end.

Every command writes CSV (or JSON with ``--json``) led by ``#`` provenance
lines holding the tool version and the fully resolved options.  Output is
deterministic for fixed inputs.

Exit codes: 0 all checks pass, 1 a violation was found, 2 inconclusive,
3 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import certify as cert
from . import divergence as dv
from . import envelope as env
from . import generators as gen
from . import polycert as pc
from .dist import Distribution, variational_distance

EXIT_OK, EXIT_VIOLATION, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
FIGURE_GRID = "0.05:8:2000:log"


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------------
# output model


def _cell(x) -> object:
    """Deterministic scalar for CSV/JSON; rationals as num/den strings."""
    if isinstance(x, Fraction):
        return pc.fraction_str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if x is None:
        return ""
    return x


@dataclass
class Table:
    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    status: Optional[str] = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "status": self.status,
            "notes": list(self.notes),
            "columns": list(self.columns),
            "rows": [dict(zip(self.columns, map(_cell, r))) for r in self.rows],
        }


@dataclass
class ReportDocument:
    sections: list[Table]
    provenance: dict

    @property
    def passed(self) -> bool:
        return all(s.status in (None, "pass") for s in self.sections)

    def render(self, as_json: bool = False) -> str:
        return render(self.sections, self.provenance, as_json)


def render(tables: Sequence[Table], provenance: dict, as_json: bool = False) -> str:
    if as_json:
        doc = {"provenance": provenance, "tables": [t.as_dict() for t in tables]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for k, v in provenance.items():
        buf.write(f"# {k}: {v}\n")
    for t in tables:
        buf.write(f"# table: {t.title}\n")
        if t.status is not None:
            buf.write(f"# status: {t.status}\n")
        for n in t.notes:
            buf.write(f"# note: {n}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(t.columns)
        for r in t.rows:
            w.writerow([_fmt(_cell(x)) for x in r])
    return buf.getvalue()


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


# ----------------------------------------------------------------------------
# argument helpers


def _generator(args) -> gen.Generator:
    name = args.generator or "kl"
    params = {k: v for k, v in (("alpha", args.alpha), ("nu", args.nu), ("lam", args.lam)) if v is not None}
    key = name.lower().replace("-", "_")
    if key in gen.BUILTIN_NAMES:
        return gen.builtin(key, **_typed_params(params))
    if params:
        raise UsageError(f"parameters given for non-parametric generator {name!r}")
    try:
        return gen.parse_generator(name)
    except gen.GeneratorError as e:
        raise UsageError(f"unknown generator {name!r} (built-ins: {', '.join(gen.BUILTIN_NAMES)}); "
                         f"not a parsable expression either: {e}") from None


def _typed_params(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        out[k] = int(v) if k == "nu" else gen.as_fraction(Fraction(v))
    return out


def _coefficients(args, f: gen.Generator) -> gen.PinskerCoefficients:
    """Closed forms for D_(alpha) (defined at the endpoints too), else the oracle."""
    if (args.generator or "").lower().replace("-", "_") == "rel_info_alpha" and args.alpha is not None:
        return gen.rel_info_alpha_coefficients(Fraction(args.alpha))
    return gen.coefficients(f)


def _distribution(text: str) -> Distribution:
    if Path(text).is_file():
        return Distribution.from_csv(text)
    return Distribution.parse(text)


def _float_list(text: str) -> list[float]:
    """``a,b,c`` or ``lo:hi:step`` (inclusive, decimal-exact steps)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range {text!r} is not lo:hi:step")
        lo, hi, step = (Fraction(s) for s in parts)
        if step <= 0 or hi < lo:
            raise UsageError(f"bad range {text!r}")
        n = int((hi - lo) / step)
        return [float(lo + k * step) for k in range(n + 1)]
    return [float(Fraction(s.strip())) for s in text.split(",") if s.strip()]


def _status_exit(statuses) -> int:
    statuses = list(statuses)
    if any(s == cert.Status.VIOLATED for s in statuses):
        return EXIT_VIOLATION
    if any(s == cert.Status.INCONCLUSIVE for s in statuses):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cert_row(r: cert.CertificateResult) -> list:
    return [r.condition, r.status.value, r.margin, r.witness_u, r.grid_spec]


CERT_COLUMNS = ["condition", "status", "min_scaled_margin", "witness_u", "grid"]


# ----------------------------------------------------------------------------
# commands


def cmd_eval(args) -> tuple[list[Table], int]:
    if not (args.p and args.q):
        raise UsageError("eval needs --p and --q")
    f = _generator(args)
    P, Q = _distribution(args.p), _distribution(args.q)
    d = dv.f_divergence(f, P, Q)
    v = variational_distance(P, Q)
    c = _coefficients(args, f)
    cols = ["divergence", "value", "V", "c2", "bound2", "holds2", "c4", "bound4", "holds4"]
    b2 = float(c.c2) * v**2
    row = [f.name, d, v, c.c2, b2, d >= b2 - args.tol]
    if c.c4 > 0 and c.w4_defined:
        b4 = b2 + float(c.c4) * v**4
        row += [c.c4, b4, d >= b4 - args.tol]
    else:
        row += [c.c4, None, None]
    notes = ["bounds hold for generators whose sufficient conditions certify (see certify)"]
    return [Table("divergence", cols, [row], notes=notes)], EXIT_OK


def cmd_coeffs(args) -> tuple[list[Table], int]:
    f = _generator(args)
    c = _coefficients(args, f)
    w4 = c.w4 if c.w4_defined else "undefined"
    t = Table("coefficients", ["generator", "c2", "w2", "c4", "w4"], [[f.name, c.c2, c.w2, c.c4, w4]])
    if not c.exact:
        t.notes.append("numeric-grade coefficients")
    return [t], EXIT_OK


def cmd_certify(args) -> tuple[list[Table], int]:
    f = _generator(args)
    c = _coefficients(args, f)
    grid = args.grid_spec
    results, notes = [], []
    if args.order == "second":
        results.append(cert.check_second_order_condition(f, grid, c, tol=args.tol))
        try:
            results.append(cert.check_second_order_derivative_condition(f, grid, c, tol=args.tol))
        except (cert.ConditionError, gen.DerivativeOrderError) as e:
            notes.append(f"derivative condition not applicable: {e}")
    else:
        if c.c4 > 0:
            results.append(cert.check_fourth_order_condition(f, grid, c, tol=args.tol))
        else:
            notes.append(f"pointwise fourth-order condition skipped: c4 = {pc.fraction_str(Fraction(c.c4))} <= 0")
        try:
            results.append(cert.check_fourth_order_derivative_condition(f, grid, c, tol=args.tol))
        except (cert.ConditionError, gen.DerivativeOrderError) as e:
            notes.append(f"derivative condition not applicable: {e}")
    if not results:
        return [Table("certificate", CERT_COLUMNS, [], "inconclusive", notes)], EXIT_INCONCLUSIVE
    code = _status_exit(r.status for r in results)
    status = {EXIT_OK: "pass", EXIT_VIOLATION: "violated", EXIT_INCONCLUSIVE: "inconclusive"}[code]
    notes.append("certified_numeric means no violation on the grid, not a proof")
    return [Table(f"certify {args.order}: {f.name}", CERT_COLUMNS, [_cert_row(r) for r in results], status, notes)], code


def _identity_table(rep: pc.IdentityReport) -> Table:
    rows = [["check", k, "ok" if v else "FAIL"] for k, v in rep.checks.items()]
    rows += [["value", k, v] for k, v in rep.values.items()]
    return Table(f"identity {rep.name}", ["kind", "name", "value"], rows, "pass" if rep.passed else "fail")


def _poly_table(title: str, polys: list[tuple[str, pc.RationalPoly]]) -> Table:
    return Table(title, ["name", "degree", "coefficients_ascending"],
                 [[n, p.degree, " ".join(p.coefficient_strings())] for n, p in polys])


def cmd_identity(args) -> tuple[list[Table], int]:
    name = args.name
    tables: list[Table] = []
    if name == "kl-sixth":
        rep = pc.kl_sixth_identity()
        tables.append(_identity_table(rep))
        polys = [("T", pc.RationalPoly(pc.KL_QUARTIC, "u"))]
    elif name == "p10":
        rep = pc.verify_p10_identity()
        tables.append(_identity_table(rep))
        polys = [("P10", pc.p10())] + [
            (f"term{i}_m{m}_n{n}", c) for i, (c, m, n) in enumerate(pc.p10_decomposition_terms(), 1)]
    elif name == "alpha-chain":
        rep = pc.alpha_appendix_chain()
        tables.append(_identity_table(rep))
        polys = [(f"c{k}", p) for k, p in enumerate(pc.alpha_fourth_bracket_coeffs())] + [("P10", pc.p10())]
    elif name == "alpha-bracket":
        if args.alpha is None:
            raise UsageError("alpha-bracket needs --alpha")
        a = Fraction(args.alpha)
        T = pc.alpha_fourth_bracket(a)
        res = pc.quartic_certificate(T)
        ok = isinstance(res, pc.QuarticCertificate) and pc.verify_quartic_identity(T, res)
        rows = [["value", "alpha", pc.fraction_str(a)],
                ["value", "prefactor (alpha+1)(2-alpha)/273375", pc.fraction_str((a + 1) * (2 - a) / 273375)]]
        vals = res.as_strings() if isinstance(res, pc.QuarticCertificate) else res.values
        rows += [["value", k, v] for k, v in vals.items()]
        if not ok:
            rows.append(["note", "certificate", res.reason])
        tables.append(Table("identity alpha-bracket", ["kind", "name", "value"], rows,
                            "pass" if ok else "inconclusive"))
        polys = [("bracket", T)]
        rep = None
        code = EXIT_OK if ok else EXIT_INCONCLUSIVE
    elif name == "division-search":
        res = pc.positivity_division_search(pc.p10())
        ok = isinstance(res, pc.PositivityDecomposition)
        rows = [[c.degree, m, n, " ".join(c.coefficient_strings())] for c, m, n in res.terms] if ok else []
        t = Table("division search P10", ["coeff_degree", "m", "n", "coefficients_ascending"], rows,
                  "pass" if ok else "inconclusive")
        if ok:
            t.notes.append(f"first divisor (2-a)^{res.first_divisor[0]} (a+1)^{res.first_divisor[1]}")
            t.notes.append(f"residual {' '.join(res.residual.coefficient_strings())}")
        tables.append(t)
        polys = [("P10", pc.p10())]
        rep = None
        code = EXIT_OK if ok else EXIT_INCONCLUSIVE
    else:
        raise UsageError(f"unknown identity {name!r}")
    if rep is not None:
        code = EXIT_OK if rep.passed else EXIT_VIOLATION
    if args.emit_poly:
        tables.append(_poly_table("polynomials", polys))
    return tables, code


def cmd_envelope(args) -> tuple[list[Table], int]:
    vs = _float_list(args.v or "0.1:1.9:0.1")
    if args.topsoe:
        comp = env.compare_topsoe_bound([Fraction(str(x)) for x in vs], tol=args.tol)
        t = Table("KL envelope vs four-term bound", ["v", "envelope", "bound", "margin"], comp.rows(),
                  "pass" if comp.holds else "violated",
                  ["envelope over binary pairs: an upper bound on the global infimum"])
        return [t], EXIT_OK if comp.holds else EXIT_VIOLATION
    f = _generator(args)
    rows, worst = [], math.inf
    for x in vs:
        e = env.lower_envelope(f, x)
        m = e.min_divergence - e.bound_value
        worst = min(worst, m)
        rows.append([x, e.min_divergence, e.argmin_p, e.bound_value, m])
    ok = worst >= -args.tol
    t = Table(f"envelope {f.name}", ["v", "min_divergence", "argmin_p", "bound_value", "margin"], rows,
              "pass" if ok else "violated",
              ["min_divergence is over binary pairs: an upper bound on the global infimum",
               "bound_value = c2 v^2 + c4 v^4"])
    return [t], EXIT_OK if ok else EXIT_VIOLATION


def cmd_sweep(args) -> tuple[list[Table], int]:
    f = _generator(args)
    vs = _float_list(args.v) if args.v else list(env.DEFAULT_V_LIST)
    if args.order == "second":
        s = env.tightness_sweep_second(f, vs, p=args.at_p)
        title = f"sweep second {f.name} p={args.at_p!r}: D/v^2"
    else:
        s = env.tightness_sweep_fourth(f, vs)
        title = f"sweep fourth {f.name}: (D - c2 v^2)/v^4"
    notes = [f"richardson orders {s.orders}", f"limit {s.limit!r}", f"target {s.target!r}",
             f"relative error {s.rel_error!r}"]
    return [Table(title, ["v", "p", "ratio"], [list(r) for r in s.rows()], None, notes)], EXIT_OK


def cmd_renyi(args) -> tuple[list[Table], int]:
    if args.alpha is None:
        raise UsageError("renyi needs --alpha")
    a = float(Fraction(args.alpha))
    tables = []
    code = EXIT_OK
    if args.p and args.q:
        P, Q = _distribution(args.p), _distribution(args.q)
        tables.append(Table("renyi", ["alpha", "I_alpha", "V"], [[a, dv.renyi(a, P, Q), variational_distance(P, Q)]]))
    if args.search_violation:
        r = env.renyi_violation_search(a)
        rows = [[a, r.status, r.p, r.v, r.renyi, r.bound]]
        tables.append(Table("renyi violation search: I_alpha < alpha V^2 / 2",
                            ["alpha", "status", "p", "v", "I_alpha", "bound"], rows, r.status, [r.note]))
        code = {"violated": EXIT_VIOLATION, "inconclusive": EXIT_INCONCLUSIVE}.get(r.status, EXIT_OK)
    elif not (args.p and args.q):
        if not 0 < a < 1:
            raise UsageError("the fourth-order Renyi check needs 0 < alpha < 1")
        r = env.renyi_fourth_check(a)
        b2, b4 = env.renyi_fourth_coefficients(Fraction(args.alpha))
        tables.append(Table("renyi fourth-order bound on random binary pairs", CERT_COLUMNS, [_cert_row(r)],
                            "pass" if r.ok else r.status.value,
                            [f"I_alpha >= {pc.fraction_str(b2)} V^2 + {pc.fraction_str(b4)} V^4"]))
        code = _status_exit([r.status])
    return tables, code


def cmd_figure(args) -> tuple[list[Table], int]:
    if args.name != "hw":
        raise UsageError(f"unknown figure {args.name!r}")
    f = _generator(args)
    ws = _float_list(args.w or "0.2,0.3333,0.5")
    grid = cert.GridSpec.parse(args.grid_spec or FIGURE_GRID)
    tables = []
    for w in ws:
        prof = cert.h_w_profile(f, w, grid)
        notes = [f"argmax_u {prof.argmax_u!r}", f"max {prof.max_value!r}", f"value at u=1 {prof.limit_at_1!r}"]
        tables.append(Table(f"h_w {f.name} w={w!r}", ["u", "h"], [[a, b] for a, b in zip(prof.u, prof.h)], None, notes))
    return tables, EXIT_OK


def cmd_conjecture(args) -> tuple[list[Table], int]:
    if args.name == "log6":
        rep = env.conjecture_log6(args.grid_spec and cert.GridSpec.parse(args.grid_spec).build())
        rows = []
    elif args.name == "surplus":
        rep = env.conjecture_surplus()
        rows = [list(r) for r in rep.rows]
    else:
        raise UsageError(f"unknown conjecture {args.name!r}")
    notes = [f"{k} = {v}" for k, v in rep.summary.items()]
    cols = ["v", "argmin_p", "infimum", "v6_coefficient"] if rows else ["label"]
    t = Table(f"{rep.label} {rep.name}", cols, rows or [[rep.label]], rep.label, notes)
    code = EXIT_VIOLATION if rep.summary.get("violation_found") else EXIT_OK
    return [t], code


def cmd_report(args) -> tuple[list[Table], int]:
    doc = report_all()
    return doc.sections, EXIT_OK if doc.passed else EXIT_VIOLATION


# ----------------------------------------------------------------------------
# the bundled report

EXPECTED_COEFFS = {
    "kl": (Fraction(1, 2), Fraction(1, 3), Fraction(1, 36), Fraction(17, 45)),
    "jeffreys": (Fraction(1), Fraction(1, 2), Fraction(1, 12), Fraction(1, 2)),
}


def _alpha_grid(step=Fraction(1, 20)):
    a, out = Fraction(-1), []
    while a <= 2:
        out.append(a)
        a += step
    return out


def report_all(expected: Optional[dict] = None) -> ReportDocument:
    """Run every reproduction check and bundle the tables.

    ``expected`` overrides the reference coefficient table (used to check that
    a tampered reference is flagged).
    """
    expected = dict(EXPECTED_COEFFS if expected is None else expected)
    sections = []

    rows, ok = [], True
    for name, ref in expected.items():
        got = gen.coefficients(gen.builtin(name)).as_tuple()
        match = tuple(got) == tuple(ref)
        ok &= match
        rows.append([name, *got, match])
    for a in (Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2), Fraction(2)):
        # from the exact derivatives at 1; w4 is 0/0 where c4 vanishes
        c = gen.coefficients(gen.rel_info_alpha(a))
        w4 = c.w4_value if c.w4_defined else gen.rel_info_alpha_coefficients(a).w4
        got = (c.c2, c.w2, c.c4, w4)
        ref = (Fraction(1, 2), (a + 1) / 3, (a + 1) * (2 - a) / 72, (17 + 11 * a) / 45)
        match = got == ref and c.exact
        ok &= match
        rows.append([f"rel_info_alpha[{pc.fraction_str(a)}]", *got, match])
    sections.append(Table("coefficients", ["generator", "c2", "w2", "c4", "w4", "matches"], rows,
                          "pass" if ok else "fail",
                          ["at alpha in {-1, 2} c4 = 0 and w4 is the continuous extension (17 + 11 alpha)/45"]))

    def cert_section(title, items):
        rows = [[label, r.status.value, r.margin, r.witness_u] for label, r in items]
        good = all(r.ok for _, r in items)
        return Table(title, ["generator", "status", "min_scaled_margin", "witness_u"], rows, "pass" if good else "fail",
                     [f"grid {cert.STANDARD_GRID}"])

    second = [(n, cert.check_second_order_derivative_condition(gen.builtin(n)))
              for n in ("kl", "reverse_kl", "jeffreys", "chi2", "hellinger")]
    second += [(f"rel_info_alpha[{pc.fraction_str(a)}]",
                cert.check_second_order_derivative_condition(gen.rel_info_alpha_family(a), None,
                                                             gen.rel_info_alpha_coefficients(a)))
               for a in _alpha_grid()]
    sections.append(cert_section("second-order derivative condition", second))

    fourth = [(n, cert.check_fourth_order_derivative_condition(gen.builtin(n))) for n in ("kl", "jeffreys")]
    fourth += [(f"rel_info_alpha[{pc.fraction_str(a)}]",
                cert.check_fourth_order_derivative_condition(gen.rel_info_alpha_family(a), None,
                                                             gen.rel_info_alpha_coefficients(a)))
               for a in _alpha_grid()]
    sections.append(cert_section("fourth-order derivative condition", fourth))

    for rep in (pc.kl_sixth_identity(), pc.verify_p10_identity(), pc.alpha_appendix_chain()):
        sections.append(_identity_table(rep))

    search = pc.positivity_division_search(pc.p10())
    ok = isinstance(search, pc.PositivityDecomposition) and search.first_divisor == (3, 5)
    quo = search.terms[0][0] if ok else None
    ok = ok and quo == pc.RationalPoly([300831606416, 189041519104, 20792743232], "alpha")
    sections.append(Table("division search P10", ["first_m", "first_n", "first_quotient"],
                          [[*(search.first_divisor or ("", "")), str(quo)]] if ok else [], "pass" if ok else "fail"))

    sweeps = [
        ("kl second", env.tightness_sweep_second(gen.kl()), 5e-3, False),
        ("kl fourth", env.tightness_sweep_fourth(gen.kl()), 1e-2, True),
        ("jeffreys fourth", env.tightness_sweep_fourth(gen.jeffreys()), 1e-2, True),
        ("rel_info_alpha[1/2] fourth", env.tightness_sweep_fourth(gen.rel_info_alpha(Fraction(1, 2))), 1e-2, True),
        ("rel_info_alpha[3/2] fourth", env.tightness_sweep_fourth(gen.rel_info_alpha(Fraction(3, 2))), 1e-2, True),
    ]
    rows, ok = [], True
    for label, s, tol, rel in sweeps:
        err = s.rel_error if rel else s.abs_error
        ok &= err <= tol
        rows.append([label, s.limit, s.target, err, tol])
    sections.append(Table("tightness limits", ["case", "limit", "target", "error", "tolerance"], rows,
                          "pass" if ok else "fail"))

    comp = env.compare_topsoe_bound()
    sections.append(Table("KL envelope vs four-term bound", ["v", "envelope", "bound", "margin"], comp.rows(),
                          "pass" if comp.holds else "fail",
                          ["envelope over binary pairs: an upper bound on the global infimum"]))

    rows, ok = [], True
    for a in (0.25, 0.5, 0.75):
        r = env.renyi_fourth_check(a)
        ok &= r.ok
        rows.append([f"fourth-order bound alpha={a}", r.status.value, r.margin])
    for a, want in ((1.3, "violated"), (1.1, "inconclusive")):
        r = env.renyi_violation_search(a)
        ok &= r.status == want
        rows.append([f"violation search alpha={a}", r.status, r.renyi - r.bound if r.found else None])
    sections.append(Table("renyi", ["check", "status", "margin"], rows, "pass" if ok else "fail"))

    checks = env.sampled_consequences()
    sections.append(Table("sampled consequences", ["inequality", "holds", "min_scaled_margin", "pairs"],
                          [[c.name, c.holds, c.min_margin, c.pairs] for c in checks],
                          "pass" if all(c.holds for c in checks) else "fail",
                          ["Delta_nu >= V^(2 nu) is false in general; 2^(1-2nu) V^(2 nu) is the corrected form"]))

    kl = gen.kl()
    rows, ok = [], True
    for w, side in ((0.2, "<1"), (1 / 3, "=1"), (0.5, ">1")):
        prof = cert.h_w_profile(kl, w)
        u = prof.argmax_u
        good = {"<1": u < 1 - 1e-4 and prof.max_value > 2, "=1": abs(u - 1) <= 1e-4,
                ">1": u > 1 + 1e-4 and prof.max_value > 2}[side]
        ok &= good
        rows.append([w, u, prof.max_value, side, good])
    sections.append(Table("h_w argmax for KL", ["w", "argmax_u", "max", "expected_side", "ok"], rows,
                          "pass" if ok else "fail"))

    log6, surplus = env.conjecture_checks()
    ok = not log6.summary["violation_found"] and surplus.summary["relative_error"] <= 0.1
    sections.append(Table(f"{env.CONJECTURE_LABEL} sixth order", ["item", "value"],
                          [[k, v] for k, v in {**log6.summary, **surplus.summary}.items()],
                          "pass" if ok else "fail", ["exploration only, never a certificate"]))

    provenance = {"tool": f"pinskerf {__version__}", "command": "report", "grid": str(cert.STANDARD_GRID),
                  "margin_tol": cert.MARGIN_TOL}
    return ReportDocument(sections, provenance)


# ----------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--generator", help="built-in name or expression such as 'u*log(u)' (default kl)")
    p.add_argument("--alpha", help="parameter for rel_info_alpha, tsallis, renyi (decimal or fraction)")
    p.add_argument("--nu", help="integer parameter for triangular_nu")
    p.add_argument("--lam", help="parameter for cressie_read")
    p.add_argument("--p", help="distribution P: '0.5,0.5' or a file with one weight per line")
    p.add_argument("--q", help="distribution Q, same format as --p")
    p.add_argument("--v", help="total variation values: 'a,b,c' or 'lo:hi:step'")
    p.add_argument("--w", help="mixture weights for figures: 'a,b,c'")
    p.add_argument("--grid-spec", help="u-grid 'lo:hi:points[:log|lin]'")
    p.add_argument("--tol", type=float, default=1e-9, help="margin tolerance (default 1e-9)")
    p.add_argument("--json", action="store_true", help="emit JSON instead of CSV")
    p.add_argument("--out", help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pinskerf", description="Pinsker-type inequalities for f-divergences")
    parser.add_argument("--version", action="version", version=f"pinskerf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("eval", help="evaluate D_f(P, Q), V and the Pinsker-type bounds"))
    _common(sub.add_parser("coeffs", help="print c2, w2, c4, w4 as exact rationals"))
    p = sub.add_parser("certify", help="grid-certify the sufficient conditions")
    p.add_argument("order", choices=["second", "fourth"])
    _common(p)
    p = sub.add_parser("identity", help="exact polynomial identities")
    p.add_argument("--name", required=True, choices=["kl-sixth", "p10", "alpha-chain", "alpha-bracket", "division-search"])
    p.add_argument("--emit-poly", action="store_true", help="dump coefficient lists as exact fractions")
    _common(p)
    p = sub.add_parser("envelope", help="binary lower envelope of D_f at fixed V")
    p.add_argument("--topsoe", action="store_true", help="compare the KL envelope with the four-term bound")
    _common(p)
    p = sub.add_parser("sweep", help="tightness sweeps for the best constants")
    p.add_argument("order", choices=["second", "fourth"])
    p.add_argument("--at-p", type=float, default=0.5, help="p for the second-order sweep (default 0.5)")
    _common(p)
    p = sub.add_parser("renyi", help="Renyi information gain checks")
    p.add_argument("--search-violation", action="store_true", help="search for I_alpha < alpha V^2 / 2")
    _common(p)
    p = sub.add_parser("figure", help="plot data")
    p.add_argument("name", choices=["hw"])
    _common(p)
    p = sub.add_parser("conjecture", help="numeric exploration of the sixth-order question")
    p.add_argument("--name", required=True, choices=["log6", "surplus"])
    _common(p)
    _common(sub.add_parser("report", help="run every reproduction check"))
    return parser


COMMANDS = {
    "eval": cmd_eval, "coeffs": cmd_coeffs, "certify": cmd_certify, "identity": cmd_identity,
    "envelope": cmd_envelope, "sweep": cmd_sweep, "renyi": cmd_renyi, "figure": cmd_figure,
    "conjecture": cmd_conjecture, "report": cmd_report,
}


def _resolved(args) -> dict:
    skip = {"json", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, False)}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        tables, code = COMMANDS[args.command](args)
        config = _resolved(args)
        provenance = {"tool": f"pinskerf {__version__}", "command": args.command,
                      "config": " ".join(f"{k}={v}" for k, v in config.items()), "exit_code": code}
        text = render(tables, provenance, args.json)
    except UsageError as e:
        stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError, gen.GeneratorError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    raise SystemExit(run())
