# Suite de pruebas de pimclass (pytest). Ver conftest.py para factories y fixtures.
