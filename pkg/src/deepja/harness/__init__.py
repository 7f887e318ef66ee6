"""Test suites, batch profiles and the command line."""

from deepja.harness.items import SuiteError, TestItem, read_items, write_items
from deepja.harness.profile import (
    Profile, Report, SuiteMismatchError, compare_profiles, read_profile, run_profile,
    write_profile,
)

__all__ = ["TestItem", "SuiteError", "read_items", "write_items", "Profile", "Report",
           "SuiteMismatchError", "run_profile", "compare_profiles", "read_profile",
           "write_profile"]
