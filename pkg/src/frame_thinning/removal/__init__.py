from .estimates import (
    RemovalError,
    g_estimate,
    g_estimate_sharp,
    log_g_estimate,
    log_g_estimate_sharp,
)
from .finite import RemovalCertificate, finite_removal, remove_parseval, remove_parseval_smallnorm
from .selection import OracleResult, RieszSelection, exhaustive_oracle, riesz_subset_select

__all__ = [
    "OracleResult",
    "RemovalCertificate",
    "RemovalError",
    "RieszSelection",
    "exhaustive_oracle",
    "finite_removal",
    "g_estimate",
    "g_estimate_sharp",
    "log_g_estimate",
    "log_g_estimate_sharp",
    "remove_parseval",
    "remove_parseval_smallnorm",
    "riesz_subset_select",
]
