"""Command execution shared by the HTTP service and the CLI.

`run(command, document_dict)` validates the document against the command's
schema, performs the computation, and returns a deterministic JSON-safe
output document: canonical factored forms, provenance notes recording the
conventions in force, and optional complex evaluations.
"""

from __future__ import annotations

from typing import Any

import pydantic

from ..acceptance import format_report, run_all, run_criterion
from ..characters import associate
from ..errors import UsageError
from ..galois import WeilParam, artin_factors, deligne_transfer, r0_compose
from ..lsfactors import (
    PrincipalSeriesParam, TwistedFactorRequest, plancherel,
    plancherel_decomposition, rs_gamma, rs_tempered_L, stability_check,
    stability_threshold, twisted_eps_and_L, twisted_gamma, _tempered_eps,
)
from ..ratfunc import format_rf
from ..rootdata import build_root_datum, langlands_decomposition
from ..tate import tate_triple
from .models import DOCUMENT_TYPES

CONVENTION_NOTES = [
    "epsilon normalization: eps(s, chi, psi) = q^(-n(psi)/2) * S(chi, psi) * "
    "Z^(a(chi) - n(psi)), with S the Gauss sum over the valuation-"
    "(n(psi) - a(chi)) shell; pinned by eps = 1 for unramified chi with "
    "conductor-0 psi, the exact local functional equation, |eps(1/2)| = 1 "
    "for unitary chi, and gamma(s, chi, psi^a) = chi(a) |a|^(s-1/2) "
    "gamma(s, chi, psi)",
    "additive conductor convention: psi is trivial on p^n(psi) and "
    "nontrivial on p^(n(psi)-1); n(psi^a) = n(psi) - v(a)",
    "psi-dependence and stability exponents are determinant-consistent: "
    "omega(a)^(n+-1) eta(a)^(n(n+-1)/2) |a|^(n(n+-1)/2 (s-1/2)), "
    "dim r0 = n(n+-1)/2",
    "the Plancherel constant gamma_w0(G/P)^2 is carried symbolically; "
    "outputs are the normalized density gamma(s) * gamma(-s, dual)",
]


def _parse_eval_point(text: str) -> complex:
    body = text.strip()
    if body.startswith("s="):
        body = body[2:]
    return complex(body.replace("i", "j").replace(" ", ""))


def _with_eval(out: dict, rfs: dict, eval_text, q: int) -> dict:
    out["results"] = {name: format_rf(rf) for name, rf in rfs.items()}
    if eval_text:
        s = _parse_eval_point(eval_text)
        evals = {}
        for name, rf in rfs.items():
            value = rf.evaluate(s, q)
            evals[name] = [value.real, value.imag]
        out["evaluations"] = {"s": [s.real, s.imag], "values": evals}
    return out


def run(command: str, document: dict) -> dict[str, Any]:
    model = DOCUMENT_TYPES.get(command)
    if model is None:
        raise UsageError(f"cli: unknown command {command!r}")
    doc = model.model_validate(document)
    handler = _HANDLERS[command]
    out = handler(doc)
    out["command"] = command
    out.setdefault("provenance", CONVENTION_NOTES)
    return out


def _run_tate(doc) -> dict:
    field, chars, psi = doc.build()
    chi = doc.lookup(chars, doc.chi)
    triple = tate_triple(chi, psi)
    out = {"factor_provenance": triple.provenance}
    return _with_eval(
        out, {"L": triple.L, "eps": triple.eps, "gamma": triple.gamma},
        doc.eval, field.q,
    )


def _run_twisted(doc) -> dict:
    field, chars, psi = doc.build()
    param = doc.build_param(chars, doc.param)
    req = TwistedFactorRequest(param, doc.r0, doc.lookup(chars, doc.eta), psi)
    gamma = twisted_gamma(req)
    out: dict = {"degree": req.degree, "r0": doc.r0}
    rfs = {"gamma": gamma}
    try:
        eps, L = twisted_eps_and_L(req)
        rfs["L"] = L
        rfs["eps"] = eps
    except UsageError as exc:
        out["note"] = f"L and eps omitted: {exc}"
    return _with_eval(out, rfs, doc.eval, field.q)


def _run_rs(doc) -> dict:
    field, chars, psi = doc.build()
    p1 = PrincipalSeriesParam([doc.lookup(chars, n) for n in doc.p1])
    p2 = PrincipalSeriesParam([doc.lookup(chars, n) for n in doc.p2])
    gamma = rs_gamma(p1, p2, psi)
    rfs = {"gamma": gamma}
    out: dict = {}
    try:
        L = rs_tempered_L(p1, p2, psi)
        L_dual = rs_tempered_L(p1.dual(), p2.dual(), psi)
        rfs["L"] = L
        rfs["eps"] = _tempered_eps(gamma, L, L_dual)
    except UsageError as exc:
        out["note"] = f"L and eps omitted: {exc}"
    return _with_eval(out, rfs, doc.eval, field.q)


def _run_artin(doc) -> dict:
    field, chars, psi = doc.build()
    sigma = WeilParam([doc.lookup(chars, n) for n in doc.sigma])
    out: dict = {"dimension": sigma.dim}
    if doc.r0 is not None:
        if doc.eta is None:
            raise UsageError("cli: artin with r0 needs an eta character")
        sigma = r0_compose(sigma, doc.r0, doc.lookup(chars, doc.eta))
        out["dimension"] = sigma.dim
        out["composed"] = doc.r0
    triple = artin_factors(sigma, psi)
    return _with_eval(
        out, {"L": triple.L, "eps": triple.eps, "gamma": triple.gamma},
        doc.eval, field.q,
    )


def _run_plancherel(doc) -> dict:
    field, chars, psi = doc.build()
    param = doc.build_param(chars, doc.param)
    req = TwistedFactorRequest(param, doc.r0, doc.lookup(chars, doc.eta), psi)
    mu = plancherel(req)
    out: dict = {
        "normalization": "gamma_w0(G/P)^-2 * mu(s) — the constant "
        "gamma_w0(G/P)^2 is symbolic and not included",
    }
    if doc.partitions:
        checked = []
        for part in doc.partitions:
            plancherel_decomposition(part, req)  # raises on mismatch
            checked.append(list(part))
        out["decompositions_verified"] = checked
    return _with_eval(out, {"mu_normalized": mu}, doc.eval, field.q)


def _run_rootdatum(doc) -> dict:
    datum = build_root_datum(doc.n, doc.parity)
    w0 = datum.siegel_w0()
    dim, exponent = datum.adjoint_data()
    out = {
        "n": doc.n,
        "parity": doc.parity,
        "simple_roots": [list(r) for r in datum.simple_roots],
        "simple_coroots": [list(c) for c in datum.simple_coroots],
        "cartan_matrix": datum.cartan_matrix(),
        "positive_root_count": len(datum.positive_roots),
        "w0_word": list(w0.word),
        "w0_length": w0.length,
        "w0_stabilizes_theta": datum.w0_stabilizes_theta(),
        "adjoint_dimension": dim,
        "measure_exponent": exponent,
    }
    if doc.partitions:
        decos = []
        for part in doc.partitions:
            deco = langlands_decomposition(datum, part)
            decos.append(
                {
                    "partition": list(part),
                    "factors": [
                        {
                            "kind": f.kind,
                            "index": list(f.index),
                            "length": f.element.length,
                            "word": list(f.element.word),
                        }
                        for f in deco.factors
                    ],
                }
            )
        out["decompositions"] = decos
    return out


def _run_transfer(doc) -> dict:
    field_a = doc.field_a.build()
    field_b = doc.field_b.build()
    chars = {name: spec.build(field_a) for name, spec in doc.characters.items()}
    psi = doc.psi.build(field_a)
    sigma_chars = [chars[n] for n in doc.sigma]
    eta = chars[doc.eta]
    cert = associate(field_a, field_b, doc.level, sigma_chars + [eta], [psi])
    sigma = WeilParam(sigma_chars)
    report = deligne_transfer(cert, sigma, doc.r0, eta, psi)
    return {
        "equal": report.equal,
        "level": doc.level,
        "levels_read": {"a": report.level_read_a, "b": report.level_read_b},
        "results": {
            "L": format_rf(report.triple_a.L),
            "eps": format_rf(report.triple_a.eps),
            "gamma": format_rf(report.triple_a.gamma),
        },
    }


def _run_stability(doc) -> dict:
    field, chars, psi = doc.build()
    p1 = PrincipalSeriesParam([doc.lookup(chars, n) for n in doc.p1])
    p2 = PrincipalSeriesParam([doc.lookup(chars, n) for n in doc.p2])
    eta = doc.lookup(chars, doc.eta)
    g1, g2, c, closed = stability_check(p1, p2, eta, psi, doc.r0)
    out = {
        "equal": g1 == g2,
        "matches_closed_form": g1 == closed,
        "threshold": stability_threshold(p1, p2),
        "c": {"valuation": c.v, "unit": field.to_codes(c.unit)},
        "results": {
            "gamma_1": format_rf(g1),
            "gamma_2": format_rf(g2),
            "closed_form": format_rf(closed),
        },
    }
    if doc.scan_threshold:
        out["scan"] = _stability_scan(p1, p2, eta, psi, doc.r0)
    return out


def _stability_scan(p1, p2, eta, psi, r0) -> list[dict]:
    """For each conductor k below a(eta), test the gamma equality with a
    canonical maximally wild character of conductor exactly k; reports the
    minimal working threshold for this instance."""
    from ..characters import MultChar, make_mult_char
    from ..scalar import Scalar

    field = p1.field
    rows = []
    minimal = None
    for k in range(0, eta.conductor + 1):
        if k == 0:
            eta_k = MultChar.trivial(field)
        elif k == 1:
            if field.q == 2:
                continue
            eta_k = make_mult_char(
                field, 1, Scalar.one(), teich_image=(field.q - 1, 1)
            )
        else:
            i0, e = k - 1, 0
            while i0 % field.p == 0:
                i0 //= field.p
                e += 1
            eta_k = make_mult_char(
                field, k, Scalar.one(),
                wild_images={(i0, 0): (field.p ** (e + 1), 1)},
            )
        g1 = twisted_gamma(TwistedFactorRequest(p1, r0, eta_k, psi))
        g2 = twisted_gamma(TwistedFactorRequest(p2, r0, eta_k, psi))
        equal = g1 == g2
        if equal and minimal is None:
            minimal = k
        rows.append({"conductor": k, "equal": equal})
    rows.append({"minimal_working_conductor": minimal})
    return rows


def _run_selftest(doc) -> dict:
    if doc.criteria:
        results = [run_criterion(n) for n in doc.criteria]
    else:
        results = run_all()
    return {
        "criteria": [
            {
                "number": r.number,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": round(r.seconds, 2),
            }
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
        "report": format_report(results),
    }


_HANDLERS = {
    "factor.tate": _run_tate,
    "factor.twisted": _run_twisted,
    "factor.rs": _run_rs,
    "factor.artin": _run_artin,
    "plancherel": _run_plancherel,
    "rootdatum": _run_rootdatum,
    "transfer-check": _run_transfer,
    "stability-demo": _run_stability,
    "selftest": _run_selftest,
}


def validation_error_details(exc: pydantic.ValidationError) -> list[dict]:
    """JSON-pointer style locations for schema violations."""
    return [
        {
            "pointer": "/" + "/".join(str(p) for p in err["loc"]),
            "message": err["msg"],
        }
        for err in exc.errors()
    ]
