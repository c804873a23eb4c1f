"""Numerical certification toolkit for Lieb-Thirring constants on S^2 and T^2.

The package evaluates and certifies the spectral series

    H_S2(a) = (4/pi)   a^3 sum_{n>=1}      (2n+1)/((n(n+1))^2 + a^2)^2 < 1,
    H_T2(a) = (4/pi^2) a^3 sum_{k in Z^2_0} 1/(|k|^4 + a^2)^2          < 1,

the budget-profile constants they rest on (f(t) = 1/(1 + mu t^2) with
mu = pi^2/16, A = sqrt(mu)/16 = pi/64), and the resulting inequality

    int rho^2 <= (3 pi / 32) * sum_j ||grad psi_j||^2

against explicit orthonormal families of scalar and vector eigenfunctions.
"""

from ltcert.records import RunConfig, VerificationRecord, make_record

__version__ = "0.1.0"

__all__ = ["RunConfig", "VerificationRecord", "make_record", "__version__"]
