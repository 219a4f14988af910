"""Geometric construction of second-order off-resonance-robust composite pulses."""
from .evolution import evolve, evolve_ode_oracle, infidelity, segment_propagator, target_unitary
from .geometry import (ErrorTrajectory, TrajectoryArc, curvature_reconstruction_check,
                       is_closed, sample_trajectory, signed_area, signed_area_numeric_oracle,
                       trajectory_of)
from .perturbation import (GCoefficients, expansion_vs_exact_check, g1_at, g2_at,
                           g_coefficients, g_coefficients_quadrature_oracle, phase_at)
from .pulse_model import (DomainError, PulseSegment, PulseSequence, RotationTarget,
                          SequenceFormatError, ValidationError, emit_sequence, normalize,
                          parse_sequence, total_rotation_angle)
from .sequences import (PreconditionError, PromotionReport, ShortCorpseAngles,
                        promote_second_order, promote_unit_strength, short_corpse,
                        short_corpse_angles, short_corpse_area, square_pulse)
from .sweep import OrderEstimate, SweepTable, estimate_order, infidelity_sweep

__version__ = "0.1.0"
