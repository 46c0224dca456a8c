"""Format conversion: JSON and CoNLL (lossless), TimeML (lossy on import)."""

from .conll import ConllFormatError, from_conll, to_conll
from .jsonfmt import JsonFormatError, from_json, to_json
from .timeml import (
    ConversionError,
    CycleError,
    LossEntry,
    LossReport,
    TimeMLDoc,
    TimeMLEvent,
    TimeMLFormatError,
    TimeMLRelation,
    Timex,
    TLink,
    from_timeml,
    timeml_export_losses,
    timeml_from_xml,
    timeml_to_xml,
    to_timeml,
)

__all__ = [
    "ConllFormatError", "from_conll", "to_conll",
    "JsonFormatError", "from_json", "to_json",
    "ConversionError", "CycleError", "LossEntry", "LossReport", "TimeMLDoc",
    "TimeMLEvent", "TimeMLFormatError", "TimeMLRelation", "Timex", "TLink",
    "from_timeml", "timeml_export_losses", "timeml_from_xml", "timeml_to_xml", "to_timeml",
]
