from lattcert.constructions.certificate import (
    CHECKS, FAILED, PARTIAL, VERIFIED, Certificate, canonical_json, replay, validate_schema,
)
from lattcert.constructions.example import worked_example
from lattcert.constructions.groups import (
    GroupDescriptor, gamma_descriptor, growth, growth_compare, growth_flags, lamplighter_descriptor,
    write_growth_csv,
)
from lattcert.constructions.sl2_lattice import lamplighter_pair, sl2_lattice_certificate
from lattcert.constructions.splitting import SplittingReport, primes_up_to, splitting_prime_set
from lattcert.constructions.torus import torus_lattice_certificate

__all__ = [
    "CHECKS", "Certificate", "FAILED", "GroupDescriptor", "PARTIAL", "SplittingReport", "VERIFIED",
    "canonical_json", "gamma_descriptor", "growth", "growth_compare", "growth_flags",
    "lamplighter_descriptor", "lamplighter_pair", "primes_up_to", "replay", "sl2_lattice_certificate",
    "splitting_prime_set", "torus_lattice_certificate", "validate_schema", "worked_example",
    "write_growth_csv",
]
