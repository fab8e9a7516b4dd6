from .arith import ResidueClassifier, primes_in_range
from .asymptotics import predict, verify_range
from .progressions import normalize
from .structure import analyze
