"""Random-matrix spectra of signal-capture data.

Build sample covariance and time-lagged correlation matrices from capture
data, estimate their eigenvalue densities, and compare them against the
Marcenko-Pastur law and the lagged-spectrum density solved from a quartic
resolvent equation. Includes deterministic synthetic sources (white noise,
narrowband BPSK, NC-OFDM), a binary capture container, and a CLI.
"""

from ._kernels import BACKEND as kernel_backend
from .curves import DensityCurve
from .estimation import (
    EsdFunction,
    KernelConfig,
    complex_projection_samples,
    eigenvalue_density,
    esd_eval,
    histogram_density,
    kde_estimate,
    ks_distance,
    l1_distance,
    projection_density,
    silverman_bandwidth,
    snap_zeros,
)
from .fileio import read_capture, read_density_csv, write_capture, write_density_csv
from .linalg import (
    ComplexSpectrum,
    CovarianceMatrix,
    DataMatrix,
    LaggedMatrix,
    RealSpectrum,
    eigvals_general,
    eigvals_symmetric,
    lagged_correlation,
    matrix_sqrt_psd,
    sample_covariance,
    shift_matrix,
    split_symmetric,
    standardize_rows,
)
from .signals import (
    DEFAULT_OCCUPIED_RANGES,
    NarrowbandSpec,
    NcofdmSpec,
    SampleStream,
    WgnSpec,
    add_awgn,
    dft,
    gen_narrowband,
    gen_ncofdm_frames,
    gen_wgn,
    occupied_from_ranges,
    spectrogram_matrix,
    stream_to_matrix,
)
from .theory import (
    GreenSolveConfig,
    MpParams,
    green_function,
    green_quartic_coeffs,
    green_scan,
    lagged_density_symmetric,
    lagged_point_mass,
    mp_cdf,
    mp_density,
    mp_params,
    project_density,
    solve_quartic,
)

__version__ = "0.1.0"
