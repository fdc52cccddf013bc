from commands.bruhat_command import BruhatCommand
from commands.catalan_command import BottCommand, CatalanCommand
from commands.orbit_command import OrbitCommand, RetractionCommand
from commands.poincare_command import PoincareCommand
from commands.polytope_command import PolytopeCommand
from commands.sweep_command import SweepCommand

COMMANDS = {
    command.name: command
    for command in (
        BruhatCommand,
        PolytopeCommand,
        PoincareCommand,
        OrbitCommand,
        RetractionCommand,
        SweepCommand,
        CatalanCommand,
        BottCommand,
    )
}

__all__ = ["COMMANDS"]
