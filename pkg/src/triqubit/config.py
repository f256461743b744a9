from dotenv import load_dotenv; load_dotenv()
import os
SEED=int(os.getenv("TRIQUBIT_SEED","42"))
RESTARTS=int(os.getenv("TRIQUBIT_RESTARTS","64"))
MAX_ITERS=int(os.getenv("TRIQUBIT_MAX_ITERS","500"))
SEARCH_TOL=float(os.getenv("TRIQUBIT_SEARCH_TOL","1e-12"))
GRID_RESOLUTION=int(os.getenv("TRIQUBIT_GRID_RESOLUTION","64"))
LOG_LEVEL=os.getenv("TRIQUBIT_LOG_LEVEL","WARNING")
SHOW_PROGRESS=os.getenv("TRIQUBIT_SHOW_PROGRESS","0") not in ("","0","false","False")
OUT_DIR=os.getenv("TRIQUBIT_OUT_DIR","./out")

# tolerances
NORM_TOL=1e-9        # norm checks on user input
HERM_TOL=1e-10       # Hermiticity / PSD / eigenvalue contract
EXACT_TOL=1e-12      # algebraic identities on exact constructions
FILE_NORM_TOL=1e-6   # state files may drift this far before --normalize is needed
ZERO_NORM=1e-12
PRODUCT_TOL=1e-10    # full-separability default
VERDICT_EPS=1e-6
VERDICT_WARN_BAND=1e-4
