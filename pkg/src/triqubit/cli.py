import logging
from pathlib import Path
from typing import Optional

import numpy as np
import typer
from tqdm import tqdm

from . import config
from .bases import canonical_cbupb, dual_cbupb, eeb, lu_transform_cbupb, random_local_unitary, shifts_upb
from .boundstate import PAPER_SIXTEENTHS, certify_bound_entanglement, paper_matrix, rho_from_eeb, sixteenths
from .config import EXACT_TOL
from .errors import StateFileError
from .fileio import dumps, load_basis, load_state, pairs, write_basis, write_matrix
from .productsearch import SearchConfig, Verdict, ees_product_free, upb_extendibility
from .qstate import Party, expand, hermitian_eigenvalues
from .report import REPORT_SCHEMA, claims_table, render_table, verify_paper
from .sampling import generator
from .tangles import (hyperdeterminant, is_fully_product, one_tangle_entropy, one_tangle_minors,
                      tangle_profile)

app=typer.Typer(help="Three-qubit entanglement toolkit: tangles, UPBs, bound entanglement")

_PROFILE_KEYS=("tau_A","tau_B","tau_C","tau_ABC","tau_AB","tau_BC","tau_AC")


class _EchoHandler(logging.Handler):
    """Log records to whatever stderr typer currently writes to."""
    def emit(self, record):
        typer.echo(self.format(record), err=True)


@app.callback()
def main(log_level:str=typer.Option(config.LOG_LEVEL,"--log-level",help="DEBUG, INFO, WARNING or ERROR")):
    level=logging.getLevelName(log_level.upper())
    if not isinstance(level,int): raise typer.BadParameter(f"unknown log level {log_level!r}", param_hint="--log-level")
    logging.basicConfig(level=level, handlers=[_EchoHandler()], format="%(levelname)s %(name)s: %(message)s", force=True)


def _emit(payload:dict, pretty:bool=False, rows:Optional[list]=None):
    typer.echo(dumps(payload))
    if pretty and rows: typer.echo(render_table(rows), err=True)


def _load(fn, path:Path, normalize:bool):
    try: return fn(path, normalize=normalize)
    except StateFileError as e:
        typer.echo(f"error: {e}", err=True)
        raise typer.Exit(2)


def _search_config(restarts:int, tol:float, seed:int) -> SearchConfig:
    try: return SearchConfig(restarts=restarts, tol=tol, seed=seed)
    except ValueError as e: raise typer.BadParameter(str(e))


def _verdict_dict(v:Verdict) -> dict:
    out={"certified":v.certified,"margin":v.margin,"best_value":v.best_value,"method":v.method,
         "converged":v.converged,"marginal":v.marginal}
    if v.witness is not None:
        w=v.witness
        out["witness"]={"a":pairs(w.a.amps),"b":pairs(w.b.amps),"c":pairs(w.c.amps),"amplitudes":pairs(expand(w).amps)}
    return out


@app.command("tangles")
def tangles(input:Path=typer.Argument(...,help="state file (triqubit-state/1)"),
            normalize:bool=typer.Option(False,"--normalize",help="rescale instead of rejecting a non-unit state"),
            pretty:bool=typer.Option(False,"--pretty")):
    psi=_load(load_state, input, normalize)
    prof=dict(zip(_PROFILE_KEYS, tangle_profile(psi).as_tuple()))
    minors={p.value:one_tangle_minors(psi,p) for p in Party}
    entropy={p.value:one_tangle_entropy(psi,p) for p in Party}
    h=hyperdeterminant(psi)
    payload={"schema":REPORT_SCHEMA,"command":"tangles","amplitudes":pairs(psi.amps),"profile":prof,
             "hyperdeterminant":[h.real,h.imag],"one_tangles":{"minors":minors,"entropy":entropy},
             "route_residual":max(abs(minors[k]-entropy[k]) for k in minors),
             "fully_product":is_fully_product(psi)}
    _emit(payload, pretty, [{"quantity":k,"value":v} for k,v in prof.items()])


@app.command("check-basis")
def check_basis(input:Path=typer.Argument(...,help="basis file (triqubit-basis/1)"),
                normalize:bool=typer.Option(False,"--normalize"),
                certify:bool=typer.Option(False,"--certify",help="run the product-state search"),
                restarts:int=typer.Option(config.RESTARTS,"--restarts",min=1),
                tol:float=typer.Option(config.SEARCH_TOL,"--tol"),
                seed:int=typer.Option(config.SEED,"--seed",min=0),
                grid:Optional[int]=typer.Option(None,"--grid",min=8,help="also run the grid oracle at this resolution"),
                pretty:bool=typer.Option(False,"--pretty")):
    cfg=_search_config(restarts, tol, seed)
    basis=_load(load_basis, input, normalize)
    m=np.array([s.amps for s in basis])
    gram=float(np.max(np.abs(m.conj()@m.T-np.eye(len(basis)))))
    states=[{"index":i,"fully_product":is_fully_product(s),
             "one_tangles":{p.value:one_tangle_minors(s,p) for p in Party}} for i,s in enumerate(basis)]
    payload={"schema":REPORT_SCHEMA,"command":"check-basis","size":len(basis),"kind":basis.kind,
             "gram_residual":gram,"states":states}
    converged=True
    if certify:
        if basis.kind=="product":
            v=upb_extendibility(basis, cfg, grid); test="upb_extendibility"
            outcome="unextendible" if v.certified else "extendible"
        else:
            v=ees_product_free(basis, cfg, grid); test="ees_product_free"
            outcome="product-free" if v.certified else "contains-product"
        payload["certification"]={"test":test,"outcome":outcome,**_verdict_dict(v)}
        converged=v.converged
    _emit(payload, pretty, [{"index":s["index"],"product":s["fully_product"],**s["one_tangles"]} for s in states])
    if not converged:
        typer.echo("error: product-state search did not converge (raise --restarts or loosen --tol)", err=True)
        raise typer.Exit(3)


@app.command("bound-state")
def bound_state(dual:bool=typer.Option(False,"--dual",help="use the bit-flipped basis"),
                export:Optional[Path]=typer.Option(None,"--export",help="write the matrix file here"),
                restarts:int=typer.Option(config.RESTARTS,"--restarts",min=1),
                seed:int=typer.Option(config.SEED,"--seed",min=0),
                grid:Optional[int]=typer.Option(None,"--grid",min=8),
                pretty:bool=typer.Option(False,"--pretty")):
    cb=dual_cbupb() if dual else canonical_cbupb()
    cert=certify_bound_entanglement(cb.s, cb.t, _search_config(restarts, config.SEARCH_TOL, seed), grid)
    rho=rho_from_eeb(cb.t)
    ints,residual=sixteenths(rho)
    six=ints if residual<EXACT_TOL else None
    payload={"schema":REPORT_SCHEMA,"command":"bound-state","variant":"dual" if dual else "canonical",
             "matrix_matches_paper":cert.matrix_matches_paper,
             "ppt":{"spectra":{p.value:list(cert.ppt.spectrum(p)) for p in Party},
                    "min_eigenvalue":cert.ppt.min_eigenvalue,"ppt_all":cert.ppt.ppt_all},
             "rho_spectrum":hermitian_eigenvalues(rho),
             "range_product_free":_verdict_dict(cert.range_product_free),
             "bound_entangled":cert.bound_entangled,
             "matrix":{"entries":[pairs(row) for row in rho.entries],"sixteenths":None if six is None else six.tolist()}}
    if export is not None:
        payload["exported"]=str(write_matrix(export, rho, six))
    _emit(payload, pretty, [{"cut":p.value,"min_eigenvalue":cert.ppt.spectrum(p)[-1]} for p in Party])


@app.command("lu-orbit")
def lu_orbit(seed:int=typer.Option(config.SEED,"--seed",min=0),
             count:int=typer.Option(10,"--count",min=1),
             pretty:bool=typer.Option(False,"--pretty")):
    canon=canonical_cbupb()
    base=[tangle_profile(x).as_tuple() for x in canon.states]
    samples=[]
    for k,sd in enumerate(tqdm(generator(seed).integers(0,2**31,size=count), desc="lu-orbit", disable=not config.SHOW_PROGRESS)):
        cb=lu_transform_cbupb(canon, random_local_unitary(int(sd)))
        m=np.array([x.amps for x in cb.states])
        gram=float(np.max(np.abs(m.conj()@m.T-np.eye(8))))
        drift=max(float(np.max(np.abs(np.subtract(tangle_profile(x).as_tuple(),b)))) for x,b in zip(cb.states,base))
        samples.append({"index":k,"seed":int(sd),"orthonormality_residual":gram,"tangle_residual":drift,"valid":True})
    worst=max(max(s["orthonormality_residual"],s["tangle_residual"]) for s in samples)
    payload={"schema":REPORT_SCHEMA,"command":"lu-orbit","seed":seed,"count":count,"samples":samples,"max_residual":worst}
    _emit(payload, pretty, samples)


@app.command("verify-paper")
def verify_paper_cmd(restarts:int=typer.Option(config.RESTARTS,"--restarts",min=1),
                     seed:int=typer.Option(config.SEED,"--seed",min=0),
                     pretty:bool=typer.Option(True,"--pretty/--no-pretty",help="claim table on stderr")):
    report=verify_paper(_search_config(restarts, config.SEARCH_TOL, seed))
    typer.echo(report.model_dump_json(by_alias=True, indent=2))
    if pretty: typer.echo(claims_table(report), err=True)
    if report.failed:
        typer.echo(f"error: {report.counts['FAIL']} claim(s) failed", err=True)
        raise typer.Exit(1)


@app.command("export-data")
def export_data(out:Path=typer.Argument(Path(config.OUT_DIR),help="target directory"),
                pretty:bool=typer.Option(False,"--pretty")):
    dual=dual_cbupb()
    written=[write_basis(out/"shifts.json", shifts_upb(), "product"),
             write_basis(out/"eeb.json", eeb(), "entangled"),
             write_basis(out/"dual_shifts.json", dual.s, "product"),
             write_basis(out/"dual_eeb.json", dual.t, "entangled"),
             write_matrix(out/"paper_matrix.json", paper_matrix(), np.array(PAPER_SIXTEENTHS))]
    _emit({"schema":REPORT_SCHEMA,"command":"export-data","written":[str(p) for p in written]},
          pretty, [{"file":p.name} for p in written])


if __name__=="__main__": app()
