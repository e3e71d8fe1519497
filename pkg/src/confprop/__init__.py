"""Conformance measures between event logs and process models."""
from .eventlog import EventLog, log_from_traces, parse_log, power_log, read_log, serialize_log, write_log
from .procmodel import LabeledNet, parse_net, read_net
from .values import (ConfpropError, MeasureValue, ParseError, ResourceError, UnboundedNetError,
                     UndefinedMeasureError)

__version__ = "0.1.0"

__all__ = [
    "EventLog", "log_from_traces", "parse_log", "power_log", "read_log", "serialize_log",
    "write_log", "LabeledNet", "parse_net", "read_net", "ConfpropError", "MeasureValue",
    "ParseError", "ResourceError", "UnboundedNetError", "UndefinedMeasureError",
]
