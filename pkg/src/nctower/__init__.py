"""Normal closures towers of finite group homomorphisms.

The subpackages hold the engines (``perm`` for permutation groups, ``fp``
for presentations and coset enumeration); the top-level modules build the
free normal closure, the tower and its limit, and the theorem checks.
"""
from .closure import ClosureResult, CrossedModuleReport, comparison_map, free_normal_closure
from .errors import (
    CapacityError,
    InternalConsistencyError,
    NCTowerError,
    NotAHomomorphismError,
    PreconditionError,
    RejectedInputError,
)
from .perm import GroupHom, NormalMap, PermGroup, Permutation, make_hom
from .presets import preset, preset_names
from .tower import (
    LimitResult,
    Reduction,
    Tower,
    bound_g,
    build_tower,
    inverse_limit,
    kernel_commutator_series,
    reduce,
    subnormal_closure_series,
)
from .verify import THEOREMS, CheckReport, Instance, build_corpus, run_corpus, summarize

__version__ = "0.1.0"
