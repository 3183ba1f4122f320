"""Binding constraints over annotated discourses.

Computes, for every nominal anaphor, the antecedent candidates admitted by
Principles A, Z, B and C, filters them by the reverse principles for
quantificational antecedents, and checks proposed resolutions for
coreference transitivity.
"""
from .bdp import BindLists, lexical_arg_lists, propagate
from .io import Document, DocumentError, parse_document, parse_text, serialize
from .model import (ArgStructure, BinderError, Discourse, InvalidDiscourse, LangParams, Marker,
                    Node, NPInfo, all_markers, validate_discourse)
from .obliqueness import is_o_bottom, local_domain, o_command, obliqueness_order
from .pipeline import CheckFlags, run_check, run_corpus
from .principles import (AntecReport, apply_binding, principle_a, principle_b, principle_c,
                         principle_z, reshuffle)
from .reverse import filter_reports, reverse_admissible
from .transitivity import (AnaphoricLink, check_resolution, coref_closure, number_filter,
                           pluralize_candidates)

__version__ = "0.1.0"
