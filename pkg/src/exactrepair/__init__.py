"""Exact-repair regenerating codes: lifting constructions, verification, and capacity bounds."""
from .codes import MdsMsrCode, RbtMbrCode, mbr_repair, mbr_store, msr_repair, msr_store
from .gf import MdsCodec, gf_add, gf_div, gf_inv, gf_mul, mds_decode, mds_encode
from .lift import (
    CapacityError, LiftedCode, cyclic_lift, iterated_lift, lifted_repair, pad_with_empty,
    permutation_lift,
)
from .model import (
    Bounded, CodeParams, Homogeneous, RepairTrace, StorageInstance, VerificationReport,
    reconstruct, repair, store, verify_all, verify_exact_repair_all, verify_reconstruction_all,
)

__version__ = "0.1.0"
