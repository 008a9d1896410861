"""FastAPI surface: one POST endpoint per batch command.

Request bodies are the same documents the CLI reads; responses are the same
deterministic output documents it prints.  Schema violations come back as 422
with JSON-pointer locations; computation-level usage errors as 422 with a
module-tagged message; internal consistency failures as 500.
"""

from __future__ import annotations

import pydantic
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    AssociationError, ConsistencyError, LocalFactorsError, PoleError,
    PrecisionError, UsageError, ValidationError,
)
from .runner import run, validation_error_details

app = FastAPI(
    title="localfactors",
    description=(
        "Exact twisted symmetric/exterior square local factors over "
        "finite-level models of non-archimedean local fields"
    ),
    version=__version__,
)

_USER_ERRORS = (UsageError, ValidationError, PrecisionError, AssociationError, PoleError)


@app.exception_handler(LocalFactorsError)
async def _domain_error(request: Request, exc: LocalFactorsError):
    status = 422 if isinstance(exc, _USER_ERRORS) else 500
    kind = "consistency" if isinstance(exc, ConsistencyError) else "usage"
    return JSONResponse(
        status_code=status,
        content={"ok": False, "error": {"kind": kind, "message": str(exc)}},
    )


@app.exception_handler(pydantic.ValidationError)
async def _schema_error(request: Request, exc: pydantic.ValidationError):
    return JSONResponse(
        status_code=422,
        content={
            "ok": False,
            "error": {"kind": "schema", "locations": validation_error_details(exc)},
        },
    )


@app.get("/healthz")
def healthz():
    return {"ok": True, "version": __version__}


def _endpoint(command: str):
    async def handle(document: dict):
        out = run(command, document)
        return {"ok": True, **out}

    handle.__name__ = "run_" + command.replace(".", "_").replace("-", "_")
    return handle


for _command, _path in [
    ("factor.tate", "/factor/tate"),
    ("factor.twisted", "/factor/twisted"),
    ("factor.rs", "/factor/rs"),
    ("factor.artin", "/factor/artin"),
    ("plancherel", "/plancherel"),
    ("rootdatum", "/rootdatum"),
    ("transfer-check", "/transfer-check"),
    ("stability-demo", "/stability-demo"),
    ("selftest", "/selftest"),
]:
    app.post(_path)(_endpoint(_command))
