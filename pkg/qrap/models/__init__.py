from qrap.models.models import (
    Branch,
    CharSumResult,
    ConstantSignTarget,
    CountRecord,
    DiagramBlock,
    EtaTarget,
    FamilySpec,
    Fixture,
    KmaxEntry,
    LabeledDiagram,
    NormalizedFamily,
    OverlapDiagram,
    Prediction,
    PrimeClasses,
    ProgressionPatternTarget,
    ProgressionSupportTarget,
    QuotientDiagram,
    RunConfig,
    ShiftPatternTarget,
    ShiftSupportTarget,
    SignatureReport,
    SignatureValue,
    StepsPatternTarget,
    StepsSupportTarget,
    StructureReport,
    Target,
    VerificationReport,
    VerificationRow,
    VerificationSummary,
    format_fraction,
)

__all__ = [
    "Branch",
    "CharSumResult",
    "ConstantSignTarget",
    "CountRecord",
    "DiagramBlock",
    "EtaTarget",
    "FamilySpec",
    "Fixture",
    "KmaxEntry",
    "LabeledDiagram",
    "NormalizedFamily",
    "OverlapDiagram",
    "Prediction",
    "PrimeClasses",
    "ProgressionPatternTarget",
    "ProgressionSupportTarget",
    "QuotientDiagram",
    "RunConfig",
    "ShiftPatternTarget",
    "ShiftSupportTarget",
    "SignatureReport",
    "SignatureValue",
    "StepsPatternTarget",
    "StepsSupportTarget",
    "StructureReport",
    "Target",
    "VerificationReport",
    "VerificationRow",
    "VerificationSummary",
    "format_fraction",
]
