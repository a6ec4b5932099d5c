"""Classical capacities of quantum measurement channels.

All information quantities are in nats. POVMs are passed as lists of complex
Hermitian numpy arrays; ensembles as (probs, states) pairs.
"""

# Installed wheels place the extension inside the package; build-tree tests
# import it from the top level.
try:
    from ._qmcap import *  # noqa: F401,F403
    from ._qmcap import (  # noqa: F401
        accessible_info,
        capacity_c,
        capacity_cea,
        chi_measurement,
        dual_ensemble,
        dual_observable,
        heterodyne_capacities,
        holevo_chi,
        husimi_entropy,
        mutual_info,
        scrooge_ensemble,
        shannon_info,
        sphere_capacity,
        sphere_povm,
        thermal_state,
        verify_criterion,
        weyl_heisenberg_povm,
    )
except ImportError:
    from _qmcap import (  # noqa: F401
        accessible_info,
        capacity_c,
        capacity_cea,
        chi_measurement,
        dual_ensemble,
        dual_observable,
        heterodyne_capacities,
        holevo_chi,
        husimi_entropy,
        mutual_info,
        scrooge_ensemble,
        shannon_info,
        sphere_capacity,
        sphere_povm,
        thermal_state,
        verify_criterion,
        weyl_heisenberg_povm,
    )

__all__ = [
    "accessible_info",
    "capacity_c",
    "capacity_cea",
    "chi_measurement",
    "dual_ensemble",
    "dual_observable",
    "heterodyne_capacities",
    "holevo_chi",
    "husimi_entropy",
    "mutual_info",
    "scrooge_ensemble",
    "shannon_info",
    "sphere_capacity",
    "sphere_povm",
    "thermal_state",
    "verify_criterion",
    "weyl_heisenberg_povm",
]
