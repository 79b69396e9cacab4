import hypothesis

# One derandomized profile for the whole suite: failures must reproduce
# from a bare `pytest` run with no flaky reruns and no hidden state.
hypothesis.settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=50,
)
hypothesis.settings.load_profile("suite")
