from driftparadox.levy import DiscreteJumps, ExponentialJumps, FixedJumps, LevyModel, NoJumps, brownian

# one or more representatives of every built-in jump family
FAMILY_MODELS = [
    brownian(1.0, 1.0),
    LevyModel(2.0, 0.0, NoJumps()),
    LevyModel(2.0, 0.0, ExponentialJumps(1.0, 0.5)),
    LevyModel(2.0, 0.7, ExponentialJumps(1.5, 0.3)),
    LevyModel(2.0, 0.0, FixedJumps(0.5, 1.0)),
    LevyModel(3.0, 0.2, DiscreteJumps(((0.5, 1.0), (2.0, 0.25)))),
]
