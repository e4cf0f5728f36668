"""Elementary cellular automata over two rival entity-storage layouts."""
