"""API package for serving the matcher over HTTP (FastAPI app lives in api/app.py)."""
