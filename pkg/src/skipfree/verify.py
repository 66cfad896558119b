"""Cross-check every closed form of one chain against its oracles.

Each check pairs an output of the charpoly/spectral/law pipeline with an
independent route (dense determinants, matrix powers, uniformization,
convolution, first-step linear systems) and reduces the pointwise errors to
a ComparisonReport.  The CLI's ``verify`` command and the corpus scripts
are thin wrappers over :func:`verification_reports`.
"""

import numpy as np

from .chains import DiscreteChain, transient_block
from .errors import DegenerateSpectrumError
from .charpoly import (
    continuous_charpoly_seq,
    discrete_charpoly_seq,
    direct_determinant,
    poly_eval,
)
from .law import (
    NotApplicable,
    build_law,
    laplace,
    pdf_cdf_table,
    pgf,
    phase_representation,
    pmf_table,
    moments,
)
from .oracle import (
    cdf_by_uniformization,
    compare_pmf,
    expected_hitting_times,
    geometric_sum_pmf,
    pmf_by_matrix_power,
    report_from_errors,
)

DET_THRESHOLD = 1e-10
DUAL_FORM_THRESHOLD = 1e-8
PRODUCT_THRESHOLD = 1e-8
PMF_THRESHOLD = 1e-9
MEAN_THRESHOLD = 1e-8
CDF_THRESHOLD = 1e-7


def _determinant_errors(chain, seq, kind, rng, s_points):
    lo, hi = (-1.0, 1.0) if kind == "discrete" else (0.0, 5.0)
    errors = []
    for n in range(chain.d):
        block = transient_block(chain, n)
        for s in rng.uniform(lo, hi, size=s_points):
            direct = direct_determinant(block, s, kind)
            errors.append((poly_eval(seq[n + 1], s) - direct) / (1.0 + abs(direct)))
    return errors


def verification_reports(chain, seed=0, s_points=20):
    """All oracle cross-checks for one chain.

    Returns an ordered list of (check name, ComparisonReport).  Checks that
    need a special spectrum (geometric convolution, hypoexponential CDF)
    are emitted only when the spectrum qualifies.
    """
    rng = np.random.default_rng(seed)
    law = build_law(chain)
    reports = []

    if isinstance(chain, DiscreteChain):
        seq = discrete_charpoly_seq(chain)
        reports.append(
            (
                "charpoly_vs_determinant",
                report_from_errors(
                    _determinant_errors(chain, seq, "discrete", rng, s_points),
                    DET_THRESHOLD,
                ),
            )
        )
        lam = law.spectrum.values
        dual = [
            pgf(law, s)
            - np.prod([(1.0 - v) * s / (1.0 - v * s) for v in lam])
            for s in np.arange(0.1, 0.95, 0.1)
        ]
        reports.append(
            ("pgf_dual_form", report_from_errors(np.abs(dual), DUAL_FORM_THRESHOLD))
        )
        prod_id = abs(np.prod([1.0 - v for v in lam]) - law.leading) / law.leading
        reports.append(
            ("eigen_product_identity", report_from_errors([prod_id], PRODUCT_THRESHOLD))
        )
        table = pmf_table(law, eps=1e-10)
        oracle_table = pmf_by_matrix_power(chain, len(table.support))
        reports.append(
            ("pmf_vs_matrix_power", compare_pmf(table, oracle_table, PMF_THRESHOLD))
        )
        phases = phase_representation(law)
        if not isinstance(phases, NotApplicable):
            convolved = geometric_sum_pmf(phases, len(table.support))
            errs = np.asarray(table.mass_or_density) - convolved
            reports.append(
                ("pmf_vs_geometric_convolution", report_from_errors(errs, PMF_THRESHOLD))
            )
    else:
        seq = continuous_charpoly_seq(chain)
        reports.append(
            (
                "charpoly_vs_determinant",
                report_from_errors(
                    _determinant_errors(chain, seq, "continuous", rng, s_points),
                    DET_THRESHOLD,
                ),
            )
        )
        reports.append(
            (
                "laplace_at_zero",
                report_from_errors([abs(laplace(law, 0.0) - 1.0)], 1e-10),
            )
        )
        lam = law.spectrum.values
        prod_id = abs(np.prod(lam) - law.leading) / law.leading
        reports.append(
            ("eigen_product_identity", report_from_errors([abs(prod_id)], PRODUCT_THRESHOLD))
        )
        mean, _ = moments(law)
        grid = np.linspace(0.0, 5.0 * mean, 50)
        try:
            closed = pdf_cdf_table(law, grid, method="partial_fractions")
        except DegenerateSpectrumError:
            closed = None
        if closed is not None:
            errs = [
                closed.cumulative[i] - cdf_by_uniformization(chain, t, tol=1e-10)
                for i, t in enumerate(grid)
            ]
            reports.append(
                ("cdf_vs_uniformization", report_from_errors(errs, CDF_THRESHOLD))
            )

    mean, _ = moments(law)
    h = expected_hitting_times(chain)
    rel = abs(mean - h[0]) / abs(h[0])
    reports.append(("mean_vs_linear_system", report_from_errors([rel], MEAN_THRESHOLD)))
    return reports
