import numpy as np

from gsh_shrink.gsh_prior import GshParams, gsh_density


def oracle_posterior_mean(d, alpha, tau, t, sigma,
                          halfwidth=12.0, points=40001):
    """Independent reference for the shrinkage rule.

    Integrates the posterior directly over theta on |theta - d| <=
    halfwidth * sigma with a dense trapezoid rule; the point mass enters
    analytically.
    """
    p = GshParams.make(tau, t)
    theta = np.linspace(d - halfwidth * sigma, d + halfwidth * sigma, points)
    slab = gsh_density(theta, p)
    lik = np.exp(-0.5 * ((d - theta) / sigma) ** 2) / (sigma * np.sqrt(2 * np.pi))
    num = np.trapezoid((1.0 - alpha) * theta * slab * lik, theta)
    spike = alpha * np.exp(-0.5 * (d / sigma) ** 2) / (sigma * np.sqrt(2 * np.pi))
    den = spike + np.trapezoid((1.0 - alpha) * slab * lik, theta)
    return num / den


def oracle_gsh_integral(fn, tau, t, half_range=60.0, points=200001):
    """Dense trapezoid of fn(theta) * g(theta) over |theta| <= 60 tau."""
    p = GshParams.make(tau, t)
    theta = np.linspace(-half_range * tau, half_range * tau, points)
    return np.trapezoid(fn(theta) * gsh_density(theta, p), theta)
