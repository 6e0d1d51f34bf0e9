from hypothesis import settings

# fixed example generation so a run is reproducible from the source alone
settings.register_profile("repro", derandomize=True, deadline=None, database=None)
settings.load_profile("repro")
