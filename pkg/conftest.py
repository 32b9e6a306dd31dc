# Intentionally empty. pytest inserts the rootdir of this conftest.py into sys.path
# (rootdir conftest handling under the default "prepend" import mode), which makes the
# hamsim package importable when running pytest from a checkout without installing it.
