"""Domain modules: algebra, clifford, forms, bundles, connections, transport, physics."""
