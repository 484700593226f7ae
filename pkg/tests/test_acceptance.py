"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
line.  Reference table values are externally reported results for this
estimator family; where their generating settings are underdetermined the
stated tolerance band is applied as-is and every residual discrepancy is
printed rather than hidden.
"""
import math

import numpy as np
import pytest

from conftest import oracle_posterior_mean
from gsh_shrink.cli import main
from gsh_shrink.dwt import daubechies_filter, forward, inverse
from gsh_shrink.elicitation import (ElicitationConfig, alpha_level, elicit_t,
                                    estimate_sigma)
from gsh_shrink.experiments import ExperimentConfig, run_experiment
from gsh_shrink.gsh_prior import (GshParams, ShrinkagePrior, gsh_density,
                                  gsh_kurtosis, gsh_sample)
from gsh_shrink.numerics import DENSE_QUAD, QuadratureSpec, SeededRng
from gsh_shrink.risk_analysis import (MONTE_CARLO, QUADRATURE, bayes_risk,
                                      risk_curve, rule_moments)
from gsh_shrink.shrinkage import ShrinkageRule, shrink_array

GH64 = QuadratureSpec(node_count=64)

#: Reference Bayes risks (tau = 1): by slab shape at alpha = 0.9, and by
#: spike weight at t = 3.
REFERENCE_RISK_BY_T = {-3.0: 0.125, -2.0: 0.329, -1.0: 0.223, 0.1: 0.235,
                       1.0: 0.183, 2.0: 0.221, 3.0: 0.240, 10.0: 0.247}
REFERENCE_RISK_BY_ALPHA = {0.6: 0.744, 0.7: 0.762, 0.8: 0.129, 0.9: 0.245,
                           0.99: 0.03}

#: Reference AMSE for the GSH rule on the desk-scale reproduction cells.
REFERENCE_AMSE = {
    ("doppler", 512, 3.0): 1.162, ("doppler", 512, 7.0): 0.264,
    ("doppler", 2048, 3.0): 0.423, ("doppler", 2048, 7.0): 0.104,
    ("heavisine", 512, 3.0): 0.472, ("heavisine", 512, 7.0): 0.159,
    ("heavisine", 2048, 3.0): 0.238, ("heavisine", 2048, 7.0): 0.069,
}


def report(name: str, failures: list[str], detail: str = "") -> None:
    status = "FAIL" if failures else "PASS"
    suffix = f" — {detail}" if detail else ""
    print(f"[{status}] {name}{suffix}")
    for line in failures:
        print(f"    {line}")
    assert not failures, f"{name}: {len(failures)} check(s) failed"


def make_rule(alpha=0.9, tau=1.0, t=3.0, sigma=1.0, quad=DENSE_QUAD):
    return ShrinkageRule(prior=ShrinkagePrior(alpha, GshParams.make(tau, t)),
                         sigma=sigma, quad=quad)


def test_criterion_1_prior_normalization():
    failures = []
    worst = 0.0
    for t in (-3.0, -2.0, -1.0, -math.pi / 2, 0.1, 1.0, 2.0, 3.0, 10.0):
        for tau in (0.5, 1.0, 2.0):
            p = GshParams.make(tau, t)
            theta = np.linspace(-60.0 * tau, 60.0 * tau, 200001)
            mass = np.trapezoid(gsh_density(theta, p), theta)
            err = abs(mass - 1.0)
            worst = max(worst, err)
            if err > 1e-8:
                failures.append(f"t={t} tau={tau}: integral {mass!r}")
    report("criterion 1: prior normalization on the (t, tau) grid", failures,
           f"worst |mass - 1| = {worst:.2e}")


def test_criterion_2_kurtosis_round_trip_and_sampling():
    failures = []
    cfg = ElicitationConfig()
    for t in (-2.0, -1.0, 0.5, 1.0, 3.0):
        back = elicit_t(gsh_kurtosis(t), cfg)
        if abs(back - t) > 1e-9:
            failures.append(f"round trip t={t}: got {back!r}")
    kurt_errs = []
    for i, t in enumerate((-1.0, 1.0, 3.0)):
        draws = gsh_sample(SeededRng(1202, i), GshParams.make(1.0, t), 10**6)
        centered = draws - draws.mean()
        beta_hat = np.mean(centered**4) / np.mean(centered**2) ** 2
        err = abs(beta_hat - gsh_kurtosis(t))
        kurt_errs.append(err)
        if err > 0.15:
            failures.append(
                f"sample kurtosis t={t}: {beta_hat:.4f} vs {gsh_kurtosis(t):.4f}")
    report("criterion 2: kurtosis round-trip and sampler moments", failures,
           f"worst sample-kurtosis error = {max(kurt_errs):.3f}")


def test_criterion_3_dwt_reconstruction_and_moments():
    failures = []
    rng = np.random.default_rng(33)
    for n in (64, 512, 2048):
        for n_moments in (1, 4, 10):
            x = rng.normal(size=n)
            filt = daubechies_filter(n_moments)
            decomp = forward(x, filt, 3)
            pr = np.abs(inverse(decomp) - x).max()
            energy = np.sum(decomp.scaling**2) + sum(
                np.sum(d**2) for d in decomp.details.values())
            parseval = abs(energy - np.sum(x**2)) / np.sum(x**2)
            if pr > 1e-9:
                failures.append(f"n={n} N={n_moments}: reconstruction {pr:.2e}")
            if parseval > 1e-10:
                failures.append(f"n={n} N={n_moments}: energy error {parseval:.2e}")
    g = daubechies_filter(10).highpass
    for p in range(10):
        moment = math.fsum(g[m] * m**p for m in range(len(g)))
        if abs(moment) > 1e-8:
            failures.append(f"Daub10 moment p={p}: {moment:.2e}")
    report("criterion 3: DWT perfect reconstruction, Parseval, "
           "Daub10 vanishing moments", failures)


D_GRID = (0.0, 0.5, -0.5, 1.0, -1.0, 3.0, -3.0, 6.0, -6.0, 10.0, -10.0)
T_GRID = (-3.0, 0.1, 3.0, 10.0)
ALPHA_GRID = (0.6, 0.9, 0.99)


def _rule_vs_oracle(quad) -> tuple[list[str], float]:
    failures = []
    worst = 0.0
    for t in T_GRID:
        for alpha in ALPHA_GRID:
            rule = make_rule(alpha=alpha, t=t, quad=quad)
            got = shrink_array(np.array(D_GRID), rule)
            for d, val in zip(D_GRID, got):
                ref = oracle_posterior_mean(d, alpha, 1.0, t, 1.0)
                err = abs(val - ref)
                worst = max(worst, err)
                if err > 1e-6:
                    failures.append(
                        f"t={t} alpha={alpha} d={d}: |delta - oracle| = {err:.2e}")
    return failures, worst


def _rule_shape_checks(quad) -> list[str]:
    failures = []
    for t in T_GRID:
        rule = make_rule(t=t, quad=quad)
        d = np.array([0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
        plus = shrink_array(d, rule)
        minus = shrink_array(-d, rule)
        if np.max(np.abs(plus + minus)) > 1e-10:
            failures.append(f"t={t}: antisymmetry violated")
        if np.any(np.abs(plus) > np.abs(d)):
            failures.append(f"t={t}: |delta(d)| > |d|")
        grid = np.linspace(-10, 10, 2001)
        if np.min(np.diff(shrink_array(grid, rule))) < -1e-10:
            failures.append(f"t={t}: rule is not monotone")
    return failures


def test_criterion_4_rule_correctness_default_quadrature():
    failures, worst = _rule_vs_oracle(DENSE_QUAD)
    failures += _rule_shape_checks(DENSE_QUAD)
    report("criterion 4: rule vs posterior-mean oracle (dense default "
           "quadrature)", failures, f"worst error = {worst:.2e}")


def test_criterion_4_rule_correctness_gauss_hermite_64():
    # As specified this runs the 64-node Gauss-Hermite rule.  For t = -3
    # the density has complex poles (pi - |t|) tau / c2 =~ 0.26 from the
    # real axis, and for t = 10 steep shoulders of width tau/c2 =~ 0.17,
    # so GH-64 cannot reach 1e-6 there (measured ~7e-3 / ~8e-4); the dense
    # trapezoid default above does.  Expected to fail on those shapes.
    failures, worst = _rule_vs_oracle(GH64)
    failures += _rule_shape_checks(GH64)
    report("criterion 4 (as literally specified): rule vs oracle under "
           "64-node Gauss-Hermite", failures, f"worst error = {worst:.2e}")


def test_criterion_5_risk_shape():
    failures = []
    grid = np.linspace(-8.0, 8.0, 321)
    for t in (-3.0, 3.0):
        curve = risk_curve(grid, make_rule(t=t))
        even_err = np.max(np.abs(curve.classical_risk
                                 - curve.classical_risk[::-1]))
        if even_err > 1e-8:
            failures.append(f"t={t}: risk not even, max asymmetry {even_err:.2e}")
        ident = np.max(np.abs(curve.classical_risk
                              - (curve.squared_bias + curve.variance)))
        if ident > 1e-8:
            failures.append(f"t={t}: risk != bias^2 + variance ({ident:.2e})")
        peak = abs(grid[int(np.argmax(curve.classical_risk))])
        if not 3.0 < peak < 4.0:
            plateau = 1.0 + GshParams.make(1.0, t).c2 ** 2
            failures.append(
                f"t={t}: risk maximum at |theta| = {peak:.3f}, outside (3, 4); "
                f"for t=3 the curve rises monotonically to its tail plateau "
                f"1 + (sigma c2/tau)^2 =~ {plateau:.2f}")
    report("criterion 5: classical-risk curve shape", failures)


def _bayes_risk_cells():
    cells = [(t, 0.9) for t in REFERENCE_RISK_BY_T]
    cells += [(3.0, a) for a in REFERENCE_RISK_BY_ALPHA if a != 0.9]
    return cells


def test_criterion_6_bayes_risk_quadrature_vs_monte_carlo():
    failures = []
    worst_sigmas = 0.0
    for i, (t, alpha) in enumerate(_bayes_risk_cells()):
        rule = make_rule(alpha=alpha, t=t, quad=GH64)
        quad = bayes_risk(rule, QUADRATURE)
        mc = bayes_risk(rule, MONTE_CARLO, mc_draws=10**5,
                        rng=SeededRng(606, i))
        gap = abs(quad.value - mc.value)
        n_sigma = gap / mc.std_error if mc.std_error > 0 else math.inf
        worst_sigmas = max(worst_sigmas, n_sigma)
        if gap > 3.0 * mc.std_error:
            failures.append(
                f"t={t} alpha={alpha}: quad {quad.value:.5f} vs "
                f"mc {mc.value:.5f} +/- {mc.std_error:.5f}")
    report("criterion 6a: Bayes-risk quadrature vs Monte Carlo (1e5 draws)",
           failures, f"worst gap = {worst_sigmas:.2f} standard errors")


def test_criterion_6_bayes_risk_reference_tables():
    # The quadrature values are compared to the reference rows within
    # +/-0.15.  Under tau = sigma = 1 the Bayes risk of the posterior mean
    # is bounded by the prior variance (1 - alpha) tau^2 (the risk of the
    # zero rule), i.e. 0.1 at alpha = 0.9, so reference entries like 0.329
    # are unreachable for any quadrature; the discrepancies are printed in
    # full, not hidden.
    failures = []
    print()
    for t, ref in REFERENCE_RISK_BY_T.items():
        value = bayes_risk(make_rule(alpha=0.9, t=t, quad=GH64), QUADRATURE).value
        gap = abs(value - ref)
        print(f"    t={t:5}: quadrature {value:.4f}  reference {ref:.3f}  "
              f"|gap| = {gap:.4f}")
        if gap > 0.15:
            failures.append(f"t={t}: {value:.4f} vs reference {ref} "
                            f"(gap {gap:.3f} > 0.15)")
    for alpha, ref in REFERENCE_RISK_BY_ALPHA.items():
        value = bayes_risk(make_rule(alpha=alpha, quad=GH64), QUADRATURE).value
        gap = abs(value - ref)
        print(f"    alpha={alpha}: quadrature {value:.4f}  reference {ref:.3f}  "
              f"|gap| = {gap:.4f}")
        if gap > 0.15:
            failures.append(f"alpha={alpha}: {value:.4f} vs reference {ref} "
                            f"(gap {gap:.3f} > 0.15)")
    report("criterion 6b: Bayes-risk reference-table proximity (+/-0.15)",
           failures,
           "posterior-mean risk is capped at (1-alpha) tau^2 under "
           "tau = sigma = 1")


def test_criterion_7_amse_desk_scale_reproduction():
    cfg = ExperimentConfig()  # full grid, M=20, gsh + universal_soft
    records = run_experiment(cfg)
    amse = {(r.function, r.n, r.snr, r.method): r.amse for r in records}

    failures = []
    print()
    for (fn, n, snr), ref in REFERENCE_AMSE.items():
        got = amse[(fn, n, snr, "gsh")]
        rel = got / ref - 1.0
        print(f"    {fn:>9} n={n:4d} snr={snr:g}: amse {got:.3f}  "
              f"reference {ref:.3f}  rel {rel:+.1%}")
        if abs(rel) > 0.25:
            failures.append(
                f"{fn} n={n} snr={snr}: {got:.3f} vs {ref:.3f} ({rel:+.1%})")

    for fn in cfg.functions:
        for n in cfg.sizes:
            for snr in cfg.snrs:
                g = amse[(fn, n, snr, "gsh")]
                u = amse[(fn, n, snr, "universal_soft")]
                if not g < u:
                    failures.append(
                        f"ordering: gsh {g:.3f} >= universal {u:.3f} at "
                        f"({fn}, {n}, {snr})")

    for fn in cfg.functions:
        for n in cfg.sizes:
            seq = [amse[(fn, n, snr, "gsh")] for snr in sorted(cfg.snrs)]
            if not all(a > b for a, b in zip(seq, seq[1:])):
                failures.append(f"AMSE not decreasing in SNR for {fn}, n={n}: {seq}")
        for snr in cfg.snrs:
            seq = [amse[(fn, n, snr, "gsh")] for n in sorted(cfg.sizes)]
            if not all(a > b for a, b in zip(seq, seq[1:])):
                failures.append(f"AMSE not decreasing in n for {fn}, snr={snr}: {seq}")

    report("criterion 7: desk-scale AMSE reproduction (M=20, fixed seed)",
           failures)


def test_criterion_8_elicitation_exactness():
    failures = []
    cfg = ElicitationConfig()
    j0 = cfg.primary_level
    if alpha_level(j0, cfg) != 0.0:
        failures.append("alpha at the primary level is not 0")
    if abs(alpha_level(j0 + 1, cfg) - 0.75) > 1e-15:
        failures.append(f"alpha(J0+1) = {alpha_level(j0 + 1, cfg)!r}, want 0.75")
    sigma = estimate_sigma([1.3, -1.3, 1.3, -1.3])
    if abs(sigma - 1.3 / 0.6745) > 1e-12:
        failures.append(f"sigma of constant-magnitude vector: {sigma!r}")
    if elicit_t(4.2, cfg) != 0.0:
        failures.append(f"elicit_t(4.2) = {elicit_t(4.2, cfg)!r}")
    if abs(elicit_t(5.0, cfg) + math.pi / 2) > 1e-12:
        failures.append(f"elicit_t(5) = {elicit_t(5.0, cfg)!r}")
    if abs(elicit_t(3.0, cfg) - math.pi) > 1e-12:
        failures.append(f"elicit_t(3) = {elicit_t(3.0, cfg)!r}")
    report("criterion 8: elicitation exactness", failures)


def test_criterion_9_end_to_end_determinism(tmp_path):
    import csv

    from gsh_shrink.numerics import sample_normal
    from gsh_shrink.signals import sample_function, scale_to_snr

    failures = []
    _, f_raw = sample_function("heavisine", 512)
    f = scale_to_snr(f_raw, 7.0, 1.0)
    y = f + sample_normal(SeededRng(515), 0.0, 1.0, 512)
    series = tmp_path / "series.csv"
    with open(series, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["value"])
        writer.writerows([repr(float(v))] for v in y)

    for i in (1, 2):
        code = main(["denoise", str(series),
                     "--out-prefix", str(tmp_path / f"d{i}")])
        if code != 0:
            failures.append(f"denoise run {i} exited {code}")
    for suffix in ("_denoised.csv", "_coefficients.csv"):
        a = (tmp_path / f"d1{suffix}").read_bytes()
        b = (tmp_path / f"d2{suffix}").read_bytes()
        if a != b:
            failures.append(f"denoise outputs differ: {suffix}")

    sim_args = ["simulate", "--functions", "heavisine", "--n", "512",
                "--snr", "5", "--methods", "gsh,universal_soft", "--M", "3",
                "--seed", "99", "--jobs", "1"]
    for i in (1, 2):
        code = main(sim_args + ["--out-prefix", str(tmp_path / f"s{i}")])
        if code != 0:
            failures.append(f"simulate run {i} exited {code}")
    a = (tmp_path / "s1_amse.csv").read_bytes()
    b = (tmp_path / "s2_amse.csv").read_bytes()
    if a != b:
        failures.append("simulate outputs differ")
    report("criterion 9: end-to-end determinism of denoise and simulate",
           failures)
