# the examples/ corpus is reference material, not part of the suite
collect_ignore_glob = ["examples/*"]
