# Data schema package
from src.data_schema.surface import (
    TwistPattern,
    LengthGenerator,
    FluteDescriptor,
    BasicEndDescriptor,
    EndTreeNode,
    Attachment,
    EndTree,
)
from src.data_schema.sequences import EtaSequence, ShearSequence, AlternatingSums, HorocyclicLengths
from src.data_schema.verdict import DivergencePolicy, DivergenceResult, Verdict, EndReport
from src.data_schema.chain import GeodesicChain, GapSequence
from src.data_schema.synthesis import SynthesisPlan
from src.data_schema.run_config import RunConfig

__all__ = [
    'TwistPattern', 'LengthGenerator', 'FluteDescriptor', 'BasicEndDescriptor',
    'EndTreeNode', 'Attachment', 'EndTree',
    'EtaSequence', 'ShearSequence', 'AlternatingSums', 'HorocyclicLengths',
    'DivergencePolicy', 'DivergenceResult', 'Verdict', 'EndReport',
    'GeodesicChain', 'GapSequence', 'SynthesisPlan', 'RunConfig',
]
