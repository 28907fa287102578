from scf.cli import entrypoint

entrypoint()
