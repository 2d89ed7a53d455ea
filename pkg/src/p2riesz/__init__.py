"""Matrix Pearson type II-Riesz distributions over real normed division algebras.

Dense matrix algebra over R, C and H, the weighted multivariate special
functions of the family (gamma, Pochhammer, highest weight vector,
Stiefel volumes, matrix beta functions), Jack polynomials in the C
normalization, log-densities and samplers for the Riesz, Kotz-Riesz,
Pearson II-Riesz and beta-Riesz distributions, joint spectral densities,
and a numerical verification suite.
"""

from .algebra import (
    Algebra,
    DivMatrix,
    HermitianPD,
    UpperTriangular,
    cholesky_upper,
    conj_transpose,
    frobenius_norm_sq,
    herm_det,
    principal_minors,
    real_representation,
)
from .densities import (
    BetaRieszParams,
    KotzRieszParams,
    PearsonIIRieszParams,
    RieszParams,
    beta_riesz_logpdf,
    eigenvalues_logpdf,
    kotz_riesz_logpdf,
    pearson2riesz_logpdf,
    riesz_logpdf,
    singular_values_logpdf,
)
from .errors import (
    DomainError,
    NotPositiveDefiniteError,
    SupportError,
    UnsupportedAlgebraError,
)
from .jack import Partition, enumerate_partitions, jack_C, jack_C_identity
from .sampling import (
    default_rng,
    sample_beta_riesz,
    sample_kotz_riesz,
    sample_pearson2riesz,
    sample_riesz_matrix,
    sample_stiefel,
)
from .specfun import (
    gen_pochhammer,
    ln_beta_classic,
    ln_beta_star,
    ln_mv_gamma,
    ln_q_weight,
    ln_stiefel_volume,
    q_weight,
)
from .verify import CheckReport, run_suite

__version__ = "0.1.0"
