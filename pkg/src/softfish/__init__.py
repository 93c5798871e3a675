"""Digital twin of a hydraulically actuated soft robotic fish.

Subsystems: Mooney-Rivlin material core (hyperelastic), dual-cavity tail
bending model (tail_actuator), electromechanical plant (drivetrain),
sensor emulation and attitude filters (sensors), five-mode PWM controller
(controller), reduced rigid-body hydrodynamics (vehicle), and the
scenario/telemetry harness (harness, server, cli).
"""

__version__ = "0.1.0"
