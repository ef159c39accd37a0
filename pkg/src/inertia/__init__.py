"""Higher inertia stacks of finite groups: commuting tuples, simplicial
inertia homology, twisted sectors, HKR ranks, characters and ages."""

__version__ = "0.1.0"
