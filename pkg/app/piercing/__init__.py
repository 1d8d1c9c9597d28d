from app.piercing.gaps import gamma_N, gap_profile, lemma23_witness
from app.piercing.growth import f_eval, parse_growth_spec
from app.piercing.schemas import (
    GapProfile,
    GrowthFn,
    GrowthKind,
    Lemma23Witness,
    PiercingReport,
    PointSeq,
    Representation,
    SequenceDocument,
    VerifyStatus,
)
from app.piercing.verify import strong_by_sampling, verify_piercing, verify_strong

__all__ = [
    "GapProfile",
    "GrowthFn",
    "GrowthKind",
    "Lemma23Witness",
    "PiercingReport",
    "PointSeq",
    "Representation",
    "SequenceDocument",
    "VerifyStatus",
    "f_eval",
    "gamma_N",
    "gap_profile",
    "lemma23_witness",
    "parse_growth_spec",
    "strong_by_sampling",
    "verify_piercing",
    "verify_strong",
]
