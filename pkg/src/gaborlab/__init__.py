"""gabor-lab: a finite-model laboratory for irregular Gabor systems.

Time-frequency analysis on the L x L discrete torus: point-set density,
frame bounds and canonical duals, localization envelopes and approximation
errors, the relative measure of a frame and its reciprocity with density,
plus the abstract block constructions that separate these notions.
"""

from .errors import (
    BoxTooLargeError,
    EmptyBoxError,
    GaborLabError,
    InvalidLatticeError,
    IterativeSolveError,
    NotAFrameError,
    SolverQualityWarning,
    WindowError,
)
from .gabor import (
    ExplicitRemoval,
    FrameData,
    GaborSystem,
    PerCellThinning,
    RandomThinning,
    analysis,
    canonical_dual,
    cross_gram,
    frame_bounds,
    frame_data,
    gabor_system,
    parseval,
    remove_subset,
    synthesis,
)
from .localization import (
    DecayProfile,
    Envelope,
    LineGroup,
    LocalizationPair,
    MoleculeEnvelope,
    TorusLatticeGroup,
    bridge_checks,
    column_decay_profile,
    dual_localization_envelope,
    gabor_pair,
    localization_envelope,
    molecule_envelope,
    row_decay_profile,
    self_localization_envelope,
    strong_dual_hap_error,
    strong_hap_error,
    weak_dual_hap_error,
    weak_hap_error,
)
from .measure import (
    MeasureProfile,
    measure_at_centers,
    measure_density_bounds_check,
    measure_profile,
    reciprocity_check,
)
from .pointset import (
    BoxStats,
    PointSet,
    RefLattice,
    TorusParams,
    box_stats,
    density_bounds,
    jitter,
    lattice_ids,
    lattice_points,
    round_map,
    union,
)
from .signal import (
    Signal,
    StftGrid,
    amalgam_norm,
    box_window,
    cosine_bump_window,
    gaussian_window,
    modulate,
    mp_norm,
    stft,
    tf_shift,
    translate,
)

__version__ = "0.1.0"
