"""Command-line interface for Ballkit."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import __version__, config, storage
from .calculus import diff_cart, sum3
from .construct import construct
from .decomposition import helmholtz_hodge, pt_decompose
from .demos import advection_diffusion, induction
from .errors import BallkitError, ExprError
from .expr import compile_expr
from .helmholtz import BoundaryKind, helmholtz_solve
from .plotdata import emit_slice, emit_vector_slice, parse_plane, write_csv
from .rotation import rotate
from .tensor import BallScalar
from .vector import BallVector

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NUMERICAL = 3


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def format_number(value) -> str:
    """15 significant digits; complex values as a+bj."""
    value = complex(value)
    if value.imag == 0:
        return format(value.real, ".15g")
    sign = "+" if value.imag >= 0 else "-"
    return f"{format(value.real, '.15g')}{sign}{format(abs(value.imag), '.15g')}j"


def _triple(text: str, kind=float) -> Tuple:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated values, got {text!r}")
    try:
        return tuple(kind(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid value in {text!r}")


def _sizes(text: str) -> Tuple[int, int, int]:
    return _triple(text, int)


def _floats(text: str) -> Tuple[float, float, float]:
    return _triple(text, float)


def _demo_sizes(text: str) -> Union[int, Tuple[int, int, int]]:
    """A single n (cubic n x n x n) or m,n,p."""
    if "," in text:
        return _sizes(text)
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid size {text!r}")


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def load_function(args) -> BallScalar:
    if getattr(args, "input", None):
        return storage.load(args.input)
    if getattr(args, "expr", None):
        return construct(compile_expr(args.expr, args.coords), args.coords, sizes=getattr(args, "size", None))
    raise argparse.ArgumentTypeError("one of --expr or --in is required")


def load_vector(args) -> BallVector:
    parts = [p.strip() for p in args.vexpr.split(";")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--vexpr needs three expressions separated by ';'")
    return BallVector(*(construct(compile_expr(p, args.coords), args.coords) for p in parts))


def _save(f: BallScalar, path: str) -> None:
    storage.save(f, path)
    print(f"{path}: {f.m}x{f.n}x{f.p}")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    _save(load_function(args), args.out or "out.bfn")
    return EXIT_OK


def cmd_info(args) -> int:
    f = load_function(args)
    print(f"sizes: {f.m} {f.n} {f.p}")
    print(f"vscale: {format_number(f.vscale)}")
    print(f"resolved: {str(f.resolved).lower()}")
    print(f"real: {str(f.real).lower()}")
    print(f"integral: {format_number(sum3(f))}")
    return EXIT_OK


def cmd_eval(args) -> int:
    f = load_function(args)
    a, b, c = args.point
    print(format_number(f(a, b, c, coords=args.coords)))
    return EXIT_OK


def cmd_integrate(args) -> int:
    print(format_number(sum3(load_function(args))))
    return EXIT_OK


def cmd_derive(args) -> int:
    df = diff_cart(load_function(args), args.axis)
    if args.point is not None:
        print(format_number(df(*args.point, coords=args.coords)))
    if args.out or args.point is None:
        _save(df, args.out or "derivative.bfn")
    return EXIT_OK


def cmd_rotate(args) -> int:
    _save(rotate(load_function(args), *args.angles), args.out or "rotated.bfn")
    return EXIT_OK


def cmd_helmholtz(args) -> int:
    rhs = load_function(args)
    if args.bc_expr:
        bc = compile_expr(args.bc_expr, args.coords)
    else:
        bc = 0.0
    u = helmholtz_solve(rhs, args.k2, bc, sizes=args.size, kind=BoundaryKind(args.bc_kind), coords=args.coords)
    _save(u, args.out or "helmholtz.bfn")
    return EXIT_OK


def cmd_ptdecomp(args) -> int:
    pt = pt_decompose(load_vector(args))
    prefix = args.out or "pt"
    _save(pt.phi, f"{prefix}_phi.bfn")
    _save(pt.psi, f"{prefix}_psi.bfn")
    return EXIT_OK


def cmd_hhd(args) -> int:
    result = helmholtz_hodge(load_vector(args))
    prefix = args.out or "hhd"
    _save(result.f, f"{prefix}_f.bfn")
    _save(result.pt.phi, f"{prefix}_phi.bfn")
    _save(result.pt.psi, f"{prefix}_psi.bfn")
    return EXIT_OK


def cmd_slice(args) -> int:
    plane = parse_plane(args.plane)
    if args.vexpr:
        records, header = emit_vector_slice(load_vector(args), plane, args.res)
    else:
        records, header = emit_slice(load_function(args), plane, args.res)
    write_csv(records, header, args.out)
    return EXIT_OK


def cmd_demo_advdiff(args) -> int:
    snapshots = advection_diffusion(args.steps, args.n)
    out = Path(args.out or "advdiff")
    storage.save_series(snapshots, out, "c")
    for step, c in enumerate(snapshots):
        print(f"{step} {format_number(sum3(c))}")
    return EXIT_OK


def cmd_demo_induction(args) -> int:
    snapshots = induction(args.steps, args.n)
    out = Path(args.out or "induction")
    storage.save_series([pt.phi for pt in snapshots], out, "phi")
    storage.save_series([pt.psi for pt in snapshots], out, "psi")
    print(f"{len(snapshots)} snapshots written to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_function_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--expr", help="expression in x,y,z (or r,lam,th with --coords sph)")
    p.add_argument("--in", dest="input", help="coefficient file (.bfn)")
    p.add_argument("--coords", choices=["cart", "sph"], default="cart")
    p.add_argument("--size", type=_sizes, help="fixed discretization m,n,p")


def build_parser() -> CliParser:
    parser = CliParser(prog="ballkit", description="Adaptive spectral computing on the unit ball")
    parser.add_argument("--version", action="version", version=f"ballkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="construct a function and save its coefficients")
    _add_function_input(p)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("info", help="print sizes, scale and integral")
    _add_function_input(p)
    p.set_defaults(handler=cmd_info)

    p = sub.add_parser("eval", help="evaluate at a point")
    _add_function_input(p)
    p.add_argument("--point", type=_floats, required=True)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("integrate", help="integral over the ball")
    _add_function_input(p)
    p.set_defaults(handler=cmd_integrate)

    p = sub.add_parser("derive", help="Cartesian partial derivative")
    _add_function_input(p)
    p.add_argument("--axis", choices=["x", "y", "z"], required=True)
    p.add_argument("--point", type=_floats)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("rotate", help="rotate by Z-X-Z Euler angles")
    _add_function_input(p)
    p.add_argument("--angles", type=_floats, required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_rotate)

    p = sub.add_parser("helmholtz", help="solve lap(u) + K^2 u = f")
    _add_function_input(p)
    p.add_argument("--k2", type=float, default=0.0)
    p.add_argument("--bc-kind", choices=[k.value for k in BoundaryKind], default="dirichlet")
    p.add_argument("--bc-expr")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_helmholtz)

    for name, handler, text in (
        ("ptdecomp", cmd_ptdecomp, "poloidal-toroidal decomposition"),
        ("hhd", cmd_hhd, "Helmholtz-Hodge decomposition"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--vexpr", required=True, help="three expressions separated by ';'")
        p.add_argument("--coords", choices=["cart", "sph"], default="cart")
        p.add_argument("--out", help="output file prefix")
        p.set_defaults(handler=handler)

    p = sub.add_parser("slice", help="CSV values on a plane or the sphere")
    _add_function_input(p)
    p.add_argument("--vexpr", help="vector field instead of a scalar")
    p.add_argument("--plane", required=True, help="x=c, y=c, z=c or r=1")
    p.add_argument("--res", type=int, default=64)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_slice)

    for name, handler in (("demo-advdiff", cmd_demo_advdiff), ("demo-induction", cmd_demo_induction)):
        p = sub.add_parser(name, help="time-stepping demo")
        p.add_argument("--steps", type=int, default=10)
        p.add_argument("--size", dest="n", type=_demo_sizes, default=30, help="n or m,n,p")
        p.add_argument("--out", help="snapshot directory")
        p.set_defaults(handler=handler)

    return parser


# Options whose values may start with "-" (expressions, coordinates)
VALUE_OPTIONS = frozenset({"--expr", "--vexpr", "--bc-expr", "--point", "--angles", "--size", "--k2"})


def attach_option_values(argv: Sequence[str]) -> List[str]:
    """Rewrite "--expr -x" as "--expr=-x" so argparse does not read the value as a flag."""
    out: List[str] = []
    pending = False
    for token in argv:
        if pending:
            out[-1] = f"{out[-1]}={token}"
            pending = False
            continue
        out.append(token)
        pending = token in VALUE_OPTIONS
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(attach_option_values(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(level=config.get_log_level(), format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except ExprError as e:
        print(f"ballkit: expression error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (BallkitError, ValueError, ArithmeticError, np.linalg.LinAlgError, OSError) as e:
        print(f"ballkit: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
