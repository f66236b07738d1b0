"""Shared helper: build v1 record CSV text for figure tests."""

import math

FORMAT_TAG = "# hrglab-records-v1"

HEADER = (
    "model,n,alpha,c_or_lambda,seed,sigma,kappa,max_inner_degree,"
    "omega_lb,omega_exact,colours_greedy,edges,"
    "runtime_ms_sample,runtime_ms_build,runtime_ms_analyze,"
    "kappa_lower_const,kappa_upper_const,clique_upper_const,"
    "girg_ratio_const,error"
)


def theory_constants(alpha):
    """Independent evaluation of the four per-alpha constants."""
    e = (1.0 - alpha) / (2.0 * alpha - 1.0)
    return (
        (4.0 / math.pi)
        * (2.0 * (1.0 - alpha) / (0.5 * math.pi - alpha * (math.pi - 2.0))) ** e,
        (4.0 / 3.0) ** alpha,
        (4.0 / 3.0) ** (0.5 * alpha),
        2.0 * (2.0 * (1.0 - alpha)) ** e,
    )


def record_line(
    model="hrg",
    n=1048576,
    alpha=0.6,
    c_or_lambda=0.0,
    seed=0,
    sigma=100,
    kappa=110,
    consts=None,
    error="",
):
    lo, up, cl, gr = consts if consts is not None else theory_constants(alpha)
    sig = "" if sigma is None else str(sigma)
    kap = "" if kappa is None else str(kappa)
    return (
        f"{model},{n},{alpha:.17g},{c_or_lambda:.17g},{seed},{sig},{kap},"
        f",,,,,0,0,0,{lo:.17g},{up:.17g},{cl:.17g},{gr:.17g},{error}"
    )


def write_records_csv(path, lines):
    path.write_text(FORMAT_TAG + "\n" + HEADER + "\n" + "".join(f"{l}\n" for l in lines))
    return path
