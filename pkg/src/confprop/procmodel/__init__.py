"""Labeled Petri nets, model languages and the baseline measures."""
from .baseline import prec_H, prec_TB, rec_FB, rec_TB
from .language import (Automaton, FiniteSet, ModelLanguage, NetDerived, as_language,
                       enumerate_language, fits, model_dfa, reference_model)
from .net import (SILENT, LabeledNet, enabled, net_from_spec, parse_net, read_net,
                  serialize_net, write_net)
from .statespace import StateSpace, build_state_space, is_bounded, state_cap, state_space

__all__ = [
    "prec_H", "prec_TB", "rec_FB", "rec_TB", "Automaton", "FiniteSet", "ModelLanguage",
    "NetDerived", "as_language", "enumerate_language", "fits", "model_dfa", "reference_model",
    "SILENT", "LabeledNet", "enabled", "net_from_spec", "parse_net", "read_net", "serialize_net",
    "write_net", "StateSpace", "build_state_space", "is_bounded", "state_cap", "state_space",
]
