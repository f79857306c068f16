"""Pinned CLI invocations whose canonical JSON output is frozen under golden/."""

CASES = {
    "qtilde_spinor_n4_k3": ["qtilde", "--n", "4", "--k", "3", "--mmax", "3", "--family", "spinor"],
    "qtilde_mmax0": ["qtilde", "--n", "5", "--k", "2", "--mmax", "0"],
    "qtilde_function_n6_k4": ["qtilde", "--n", "6", "--k", "4", "--mmax", "3", "--family", "function"],
    "derive_power_sphere3_N1": ["derive-power", "--n", "3", "--J", "3/2", "--N", "1"],
    "derive_power_negative_N3": ["derive-power", "--n", "4", "--J", "-2", "--N", "3"],
    "derive_power_formal_N2": ["derive-power", "--n", "5", "--J", "formal", "--N", "2"],
    "sphere_n3_N1": ["sphere", "--n", "3", "--N", "1", "--kmax", "2"],
    "sphere_n4_N2": ["sphere", "--n", "4", "--N", "2", "--kmax", "0"],
    "sphere_N0": ["sphere", "--n", "3", "--N", "0", "--kmax", "0"],
    "verify_all_quick": ["verify-all", "--profile", "quick"],
    "holographic_n4": ["holographic", "--order", "4", "--J", "2", "--n", "4"],
    "holographic_negative": ["holographic", "--order", "6", "--J", "-2", "--n", "3"],
    "holographic_n5": ["holographic", "--order", "3", "--J", "3/7", "--n", "5"],
    "membership_N0": ["membership", "--N", "0"],
    "membership_N2": ["membership", "--N", "2"],
    "membership_N4": ["membership", "--N", "4"],
    "dual_hahn_spinor": ["dual-hahn", "--family", "spinor", "--n", "4", "--k", "3", "--m", "1", "--yint", "2"],
    "dual_hahn_function": ["dual-hahn", "--family", "function", "--n", "4", "--k", "3", "--m", "1", "--yint", "1"],
    "dual_hahn_scan": ["dual-hahn", "--family", "spinor", "--n", "7", "--k", "5", "--m", "3"],
    "variation_n3": ["variation", "--order", "4", "--J", "3/2", "--n", "3"],
    "variation_negative": ["variation", "--order", "5", "--J", "-2", "--n", "6"],
    "variation_n4": ["variation", "--order", "3", "--J", "3/7", "--n", "4"],
}
