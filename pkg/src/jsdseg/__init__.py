"""Jensen-Shannon segmentation of sequences generated by measuring qubit systems."""
from .infodiv import (UndefinedDivergenceError, jsd_multi, jsd_weighted, kl_divergence,
                      shannon_entropy)
from .qmath import (Observable, QuantumState, born_distribution, maximally_mixed,
                    parse_observable, pauli, pure_to_density, spectral_decomposition, tensor)
from .scenarios import SCENARIOS, Scenario, build_scenario, list_scenarios, scenario_from_parts
from .segment import (JsdProfile, PrefixCounts, SegmentationResult, cursor_weights,
                      estimate_changepoint, estimated_distributions, jsd_profile,
                      segment_recursive)
from .seqgen import (ObservableProgram, OutcomeSequence, StateSchedule,
                     generate_classical_sequence, generate_quantum_sequence, read_sequence,
                     sample_outcome, write_sequence)

__version__ = "0.1.0"
