// placeholder; suite registry filled in after the core modules
