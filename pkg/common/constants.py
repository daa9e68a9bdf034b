class Algorithm:
    """CDF reconstruction variants."""
    ALG1             = "alg1"
    ALG2             = "alg2"


class M2_Source:
    """Origin of the density-concentration constant used for the error bound."""
    EXACT_ORACLE     = "exact-oracle"
    DENSITY_RULE     = "density-rule-of-thumb"
    USER_SUPPLIED    = "user-supplied"


class Run_Mode:
    """How the mixture coefficients are obtained from the input file."""
    MIXTURE          = "mixture"
    MEAN_BOOT        = "mean-boot"
    RESIDUAL_BOOT    = "residual-boot"


class Output_Format:
    CSV              = "csv"
    JSON             = "json"


class Exit_Code:
    """Process exit status of the command line front end."""
    OK               = 0
    FAILURE          = 1
    INVALID_INPUT    = 2
    ORACLE_TOO_LARGE = 3
