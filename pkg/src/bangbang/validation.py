"""Per-state validation combining the certificate, the oracle and the inequalities."""

from __future__ import annotations

from .certificate import build_certificate, verify
from .oracle import grid_search_min_time
from .scaling import ScaledState
from .synthesis import DEFAULT_EPS_CURVE, Case, Plan, plan, sgn
from .trajectory import final_state


def inequality_checks(p: Plan) -> dict[str, bool]:
    """Sign-case inequalities that every off-curve/on-curve plan must satisfy."""
    s = p.initial
    x0, v0 = s.x, s.x_dot
    if p.case is Case.AT_ORIGIN:
        return {}
    if p.case is Case.ON_CURVE:
        return {"t_star_equals_speed": p.total_time == abs(v0)}
    sig = p.sigma0
    checks = {
        "radicand_positive": sig * x0 + v0 * v0 / 2.0 > 0,
        "lambda_positive": p.lambda0 > 0,
        "first_bang_positive": p.bangs[0].duration > 0,
        "t_star_exceeds_speed": p.total_time > abs(v0),
    }
    if sig * v0 < 0:
        checks["lambda_exceeds_speed"] = p.lambda0 > abs(v0)
    return checks


def endpoint_miss(p: Plan) -> float:
    return final_state(p).norm


def validate_state(
    s: ScaledState,
    eps_curve: float = DEFAULT_EPS_CURVE,
    n_samples: int = 1000,
    t_step: float = 1e-3,
    accept_radius: float | None = None,
    with_oracle: bool = True,
) -> dict:
    p = plan(s, eps_curve)
    tol = 1e-9 * (1.0 + s.norm_sq)
    miss = endpoint_miss(p)
    checks = {"endpoint_reach": miss <= tol}
    checks.update(inequality_checks(p))
    report = {"endpoint_miss": miss, "certificate": None, "verification": None, "oracle": None}

    if p.case is not Case.AT_ORIGIN:
        cert = build_certificate(p)
        ver = verify(cert, n_samples)
        report["certificate"] = {"rho": cert.rho, "p_x0": cert.p_x0, "p_xdot0": cert.p_xdot0}
        report["verification"] = ver.to_dict()
        checks.update({f"certificate_{k}": v for k, v in ver.checks.items()})
        if with_oracle:
            res = grid_search_min_time(s, t_step=t_step, accept_radius=accept_radius)
            report["oracle"] = res.to_dict()
            expected_first = -p.sigma0 if p.case is Case.OFF_CURVE else -sgn(s.x_dot)
            checks["oracle_time"] = abs(res.best_time - p.total_time) <= 2.0 * t_step
            checks["oracle_first_control"] = res.best_first_control == expected_first

    report["plan"] = p
    report["checks"] = checks
    report["passed"] = all(checks.values())
    return report
