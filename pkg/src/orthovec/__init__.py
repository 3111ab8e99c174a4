"""Exact orthogonality analysis of quantum oracle queries.

Submodules:

* :mod:`orthovec.exactlin` -- exact complex-rational vectors and matrices
* :mod:`orthovec.boolfn` -- truth tables, parity, enumeration
* :mod:`orthovec.oracle` -- XOR and overwrite oracles, product input states
* :mod:`orthovec.lift` -- orthogonalization by dimensional lifting
* :mod:`orthovec.quantum` -- contexts, Born probabilities, unitarity, product test
* :mod:`orthovec.query` -- one-query decidability and separating observables
* :mod:`orthovec.ampsearch` -- float search over product input amplitudes
* :mod:`orthovec.cli` -- command-line reports
"""

from .boolfn import DEUTSCH, TruthTable, enumerate_all, evaluate, from_index, parity
from .exactlin import CScalar, KMatrix, KVector, gram, inner, tensor, truncate
from .lift import LiftResult, lift_all, lift_pair, verify_lift
from .oracle import LinearOp, ProductState, apply, build_overwrite_oracle, build_xor_oracle, product_state
from .query import OrthPartition, QuerySetup, finest_partition, is_decidable, output_vectors, property_projector
from .quantum import Context, Observable, born_probabilities, is_product_3qubit, is_unitary, measure_observable, unitary_from_bases

__version__ = "0.1.0"
