from .checker import (FamilyOracle, ModelChecker, OracleRejection, RejectOracle, TheoremOracle,
                      check, diamond_query, make_oracle, match_d_query)
from .formula import (TRUE, And, Believes, ConsidersPossible, Diamond, Formula, Not, Play,
                      ProbAtLeast, ProbGreater, Rat, Top, conj, conjuncts, disj,
                      everyone_believes, implies, mk_C, mk_D, mk_D_others, mk_E, mk_Ominus,
                      play_others, play_profile, prob_at_least, prob_greater, rat_all)
from .syntax import FormulaSyntaxError, UnknownIdError, parse, render
from .strong import strongly_admissible_level

__all__ = [
    "TRUE", "And", "Believes", "ConsidersPossible", "Diamond", "FamilyOracle", "Formula",
    "FormulaSyntaxError", "ModelChecker", "Not", "OracleRejection", "Play", "ProbAtLeast",
    "ProbGreater", "Rat", "RejectOracle", "TheoremOracle", "Top", "check", "conj", "conjuncts",
    "diamond_query", "disj", "everyone_believes", "implies", "make_oracle", "match_d_query",
    "mk_C", "mk_D", "mk_D_others", "mk_E", "mk_Ominus", "parse", "play_others", "play_profile",
    "prob_at_least", "prob_greater", "rat_all", "render", "strongly_admissible_level", "UnknownIdError",
]
