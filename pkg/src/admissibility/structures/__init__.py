from .appropriate import AppropriatenessReport, ConditionResult, check_appropriate
from .build import (MbarResult, MinftyResult, add_null_state, build_Mbar, build_Minfty,
                    build_rationalizability_structure, disjoint_union, level_id, mbar_violations,
                    merge_conjunction, profile_id)
from .model import ProbabilityStructure, StructureError, load_structure

__all__ = [
    "AppropriatenessReport", "ConditionResult", "MbarResult", "MinftyResult",
    "ProbabilityStructure", "StructureError", "add_null_state", "build_Mbar", "build_Minfty",
    "build_rationalizability_structure", "check_appropriate", "disjoint_union", "level_id",
    "load_structure", "mbar_violations", "merge_conjunction", "profile_id",
]
