from app.bounds.audit import AuditReport, AuditStep, audit_upper_bound
from app.bounds.constants import CONSTANTS, Constants, ceil_over_ln2, floor_c1_times, reference_constants
from app.bounds.limits import GammaTrendRow, gamma_trend, predicted_limit

__all__ = [
    "CONSTANTS",
    "AuditReport",
    "AuditStep",
    "Constants",
    "GammaTrendRow",
    "audit_upper_bound",
    "ceil_over_ln2",
    "floor_c1_times",
    "gamma_trend",
    "predicted_limit",
    "reference_constants",
]
