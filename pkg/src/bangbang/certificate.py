"""Pontryagin optimality certificates for planned schedules.

The costate of ``x'' = u`` evolves as ``p_x(t) = p_x0`` and
``p_v(t) = p_v0 - p_x0 t``. A plan is certified by an initial costate and a
multiplier ``rho > 0`` for which the Hamiltonian

    H = rho + p_x0 x' + (p_v0 - p_x0 t) u

vanishes along the trajectory and ``u = -sgn(p_v0 - p_x0 t)`` reproduces the
schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NontrivialityError, PreconditionError
from .synthesis import Case, Plan, sgn

ROOT_RTOL = 1e-12


@dataclass(frozen=True)
class Certificate:
    rho: float
    p_x0: float
    p_xdot0: float
    plan: Plan

    def switching_function(self, t):
        return self.p_xdot0 - self.p_x0 * t

    @property
    def switch_root(self) -> float | None:
        """Zero of the switching function, if it has one."""
        if self.p_x0 == 0.0:
            return None
        return self.p_xdot0 / self.p_x0


@dataclass
class VerificationReport:
    n_samples: int
    max_abs_hamiltonian: float
    hamiltonian_tol: float
    n_switches: int
    n_disagreements: int
    switch_root: float | None
    switch_time: float | None
    root_rel_error: float | None

    @property
    def schedule_agreement(self) -> bool:
        return self.n_disagreements == 0

    @property
    def checks(self) -> dict[str, bool]:
        checks = {
            "hamiltonian_zero": self.max_abs_hamiltonian <= self.hamiltonian_tol,
            "at_most_one_switch": self.n_switches <= 1,
            "schedule_agreement": self.schedule_agreement,
        }
        if self.switch_time is not None:
            checks["root_at_switch"] = self.root_rel_error is not None and self.root_rel_error <= ROOT_RTOL
        return checks

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "max_abs_hamiltonian": self.max_abs_hamiltonian,
            "hamiltonian_tol": self.hamiltonian_tol,
            "n_switches": self.n_switches,
            "n_disagreements": self.n_disagreements,
            "switch_root": self.switch_root,
            "switch_time": self.switch_time,
            "root_rel_error": self.root_rel_error,
            "checks": self.checks,
            "passed": self.passed,
        }


def build_certificate(plan: Plan, rho: float = 1.0) -> Certificate:
    if not rho > 0:
        raise NontrivialityError(f"rho must be positive (rho = {rho!r} gives the trivial multiplier pair)")
    if plan.case is Case.AT_ORIGIN:
        raise PreconditionError("no certificate is defined for the empty plan at the origin")
    if plan.case is Case.ON_CURVE:
        return Certificate(rho, 0.0, sgn(plan.initial.x_dot) * rho, plan)
    p_x0 = rho / (plan.lambda0 * plan.sigma0)
    return Certificate(rho, p_x0, p_x0 * plan.bangs[0].duration, plan)


def _check_time(cert: Certificate, t: float) -> None:
    t_star = cert.plan.total_time
    slack = 1e-12 * (1.0 + t_star)
    if not (-slack <= t <= t_star + slack):
        raise DomainError(f"t = {t!r} outside [0, {t_star!r}]")


def hamiltonian_at(cert: Certificate, t: float, u: float, xdot: float) -> float:
    _check_time(cert, t)
    return cert.rho + cert.p_x0 * xdot + cert.switching_function(t) * u


def _control_law(cert: Certificate, s):
    # at the root the later bang owns the instant; its sign is sgn(p_x0)
    return np.where(s != 0.0, -np.sign(s), math.copysign(1.0, cert.p_x0))


def control_from_costate(cert: Certificate, t: float) -> float:
    _check_time(cert, t)
    return float(_control_law(cert, cert.switching_function(t)))


def verify(cert: Certificate, n_samples: int = 1000) -> VerificationReport:
    """Check H = 0 and the control law on a uniform grid plus {0, switch, T*}."""
    if n_samples < 2:
        raise DomainError(f"need at least 2 samples, got {n_samples}")
    plan = cert.plan
    t_star = plan.total_time
    d1 = plan.switch_time
    extra = [0.0, t_star] if d1 is None else [0.0, d1, t_star]
    t = np.union1d(np.linspace(0.0, t_star, n_samples), extra)

    u_plan, xdot = _planned_control_and_velocity(plan, t)
    ham = cert.rho + cert.p_x0 * xdot + cert.switching_function(t) * u_plan
    u_cost = _control_law(cert, cert.switching_function(t))

    root = cert.switch_root
    root_err = None
    if d1 is not None and root is not None:
        root_err = abs(root - d1) / d1
    return VerificationReport(
        n_samples=int(t.size),
        max_abs_hamiltonian=float(np.max(np.abs(ham))),
        hamiltonian_tol=1e-9 * (1.0 + plan.initial.norm_sq),
        n_switches=int(np.count_nonzero(np.diff(u_cost))),
        n_disagreements=int(np.count_nonzero(u_cost != u_plan)),
        switch_root=root,
        switch_time=d1,
        root_rel_error=root_err,
    )


def _planned_control_and_velocity(plan: Plan, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # vectorized twin of trajectory.state_at / Plan.control_at
    x0dot = plan.initial.x_dot
    u1 = plan.bangs[0].u
    if plan.case is Case.ON_CURVE:
        return np.full_like(t, u1), x0dot + u1 * t
    d1 = plan.bangs[0].duration
    u2 = plan.bangs[1].u
    late = t >= d1
    u = np.where(late, u2, u1)
    xdot = np.where(late, plan.switch_point.x_dot + u2 * (t - d1), x0dot + u1 * t)
    return u, xdot
