import hypothesis

hypothesis.settings.register_profile(
    "suite", max_examples=25, deadline=None)
hypothesis.settings.load_profile("suite")
