"""Command-line front end.

Exit codes: 0 on success or a verified identity, 1 when a verification
fails (the counterexample is printed as JSON), 2 on usage errors.
All output is deterministic for fixed arguments and seed.
"""

import json
import sys

import click

from . import selftest as _selftest
from .errors import NcprobError
from .families import DeltaTensor, MultilinearFamily
from .nc import NcPartition, enumerate_nc, kreweras, moebius_to_one
from .typeb import Flavor, enumerate_signed
from .cumulants import (
    boolean_cumulants,
    cc_cumulants,
    cfree_cumulants,
    free_cumulants,
    infinitesimal_cumulants,
    infinitesimal_moments,
    moments_from_boolean,
    moments_from_cc,
    moments_from_cfree,
    moments_from_free,
)
from .deltastar import delta_star, psi_k
from .products import (
    boxplus,
    boxplus_b,
    boxplus_c,
    cfree_product,
    free_product,
    infinitesimal_product,
)


def _dump(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


def _load_family(path: str) -> MultilinearFamily:
    with open(path) as fh:
        return MultilinearFamily.from_json_dict(json.load(fh))


def _load_delta(path: str) -> DeltaTensor:
    with open(path) as fh:
        return DeltaTensor.from_json_dict(json.load(fh))


def _want(inputs, count: int, what: str):
    if len(inputs) != count:
        raise click.UsageError(f"{what} needs exactly {count} --input file(s)")


@click.group()
def main():
    """Exact combinatorics of non-crossing partitions and cumulants."""


@main.group("nc")
def nc_group():
    """Non-crossing partition lattice operations."""


@nc_group.command("enumerate")
@click.option("--n", "n", type=int, required=True, help="Ground-set size.")
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON array.")
def nc_enumerate(n, as_json):
    """List NC(n) in canonical order, one partition per line."""
    try:
        parts = enumerate_nc(n)
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        _dump([p.to_json() for p in parts])
    else:
        for p in parts:
            click.echo(p.to_text())


@nc_group.command("kreweras")
@click.option("--partition", "text", required=True, help='Text form, e.g. "{1,3}{2}".')
def nc_kreweras(text):
    """Print the Kreweras complement of a partition."""
    try:
        pi = NcPartition.from_text(text)
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    click.echo(kreweras(pi).to_text())


@nc_group.command("moebius")
@click.option("--partition", "text", required=True, help='Text form, e.g. "{1,3}{2}".')
def nc_moebius(text):
    """Print the Moebius value of the partition against the one-block one."""
    try:
        pi = NcPartition.from_text(text)
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    click.echo(str(moebius_to_one(pi)))


@main.group("typeb")
def typeb_group():
    """Symmetric (signed) non-crossing partition operations."""


@typeb_group.command("enumerate")
@click.option("--n", "n", type=int, required=True, help="Ground-set half-size.")
@click.option(
    "--flavor",
    type=click.Choice([f.value for f in Flavor]),
    default=Flavor.B.value,
    show_default=True,
)
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON array.")
def typeb_enumerate(n, flavor, as_json):
    """List the symmetric lattice for the chosen circular order."""
    try:
        parts = enumerate_signed(n, Flavor(flavor))
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        _dump([p.to_json() for p in parts])
    else:
        for p in parts:
            click.echo(p.to_text())


@main.command("transform")
@click.option(
    "--brand",
    type=click.Choice(["free", "boolean", "cfree", "cc", "infinitesimal"]),
    required=True,
)
@click.option(
    "--direction",
    type=click.Choice(["to-cumulants", "to-moments"]),
    required=True,
)
@click.option(
    "--input",
    "inputs",
    multiple=True,
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Family JSON file(s); two-family brands take the base family first.",
)
def transform(brand, direction, inputs):
    """Convert between moments and cumulants; result JSON on stdout.

    One input for free/boolean.  cfree and cc take (base, second family);
    infinitesimal to-cumulants takes (base moments, derivative moments) and
    to-moments takes (free cumulants of the base, derivative cumulants).
    """
    try:
        if brand in ("free", "boolean"):
            _want(inputs, 1, brand)
            f = _load_family(inputs[0])
            if brand == "free":
                out = free_cumulants(f) if direction == "to-cumulants" else moments_from_free(f)
            else:
                out = boolean_cumulants(f) if direction == "to-cumulants" else moments_from_boolean(f)
        else:
            _want(inputs, 2, brand)
            a = _load_family(inputs[0])
            b = _load_family(inputs[1])
            table = {
                ("cfree", "to-cumulants"): cfree_cumulants,
                ("cfree", "to-moments"): moments_from_cfree,
                ("cc", "to-cumulants"): cc_cumulants,
                ("cc", "to-moments"): moments_from_cc,
                ("infinitesimal", "to-cumulants"): infinitesimal_cumulants,
                ("infinitesimal", "to-moments"): infinitesimal_moments,
            }
            out = table[(brand, direction)](a, b)
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    _dump(out.to_json_dict())


@main.command("psi")
@click.option("--k", "k", type=int, default=None, help="Expected generator count.")
@click.option(
    "--input",
    "input_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--delta",
    "delta_path",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="Optional tensor JSON; defaults to the diagonal comultiplication.",
)
def psi(k, input_path, delta_path):
    """Map a distribution to its derivative-style functional."""
    try:
        nu = _load_family(input_path)
        if k is not None and nu.k != k:
            raise click.UsageError(f"family has k={nu.k}, expected {k}")
        if delta_path is None:
            out = psi_k(nu)
        else:
            out = delta_star(_load_delta(delta_path), boolean_cumulants(nu))
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    _dump(out.to_json_dict())


def _pairwise(kind, inputs, product_mode):
    if kind == "free":
        _want(inputs, 2, "free " + ("product" if product_mode else "convolution"))
        a, b = (_load_family(p) for p in inputs)
        out = free_product(a, b) if product_mode else boxplus(a, b)
        return out.to_json_dict()
    _want(inputs, 4, kind)
    fams = [_load_family(p) for p in inputs]
    ops = {
        ("cfree", True): cfree_product,
        ("cfree", False): boxplus_c,
        ("infinitesimal", True): infinitesimal_product,
        ("infinitesimal", False): boxplus_b,
    }
    first, second = ops[(kind, product_mode)](*fams)
    key = "nu" if kind == "cfree" else "mu_prime"
    return {"mu": first.to_json_dict(), key: second.to_json_dict()}


@main.command("product")
@click.option(
    "--kind",
    type=click.Choice(["free", "cfree", "infinitesimal"]),
    required=True,
)
@click.option(
    "--input",
    "inputs",
    multiple=True,
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Two files for free, four (mu1 nu1 mu2 nu2) otherwise.",
)
def product(kind, inputs):
    """Free product of distributions or pairs; result JSON on stdout."""
    try:
        _dump(_pairwise(kind, inputs, product_mode=True))
    except NcprobError as exc:
        raise click.UsageError(str(exc))


@main.command("convolve")
@click.option(
    "--kind",
    type=click.Choice(["free", "cfree", "infinitesimal"]),
    required=True,
)
@click.option(
    "--input",
    "inputs",
    multiple=True,
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Two files for free, four (mu1 nu1 mu2 nu2) otherwise.",
)
def convolve(kind, inputs):
    """Additive convolution of distributions or pairs."""
    try:
        _dump(_pairwise(kind, inputs, product_mode=False))
    except NcprobError as exc:
        raise click.UsageError(str(exc))


@main.command("verify")
@click.option(
    "--theorem",
    type=click.Choice(
        ["12", "13", "14", "17", "lemma210", "lemma67", "prop41", "prop54", "eq5a", "eq55a"]
    ),
    required=True,
    help="Which identity to check on seeded random inputs.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--k", "k", type=int, default=2, show_default=True)
@click.option("--l", "l", type=int, default=1, show_default=True,
              help="Second generator count (product identity only).")
@click.option("--N", "-N", "--n", "big_n", type=int, default=4, show_default=True,
              help="Comparison degree.")
def verify(theorem, seed, k, l, big_n):
    """Check one identity; exit 0 when it holds, 1 with a counterexample."""
    try:
        report = _selftest.verify_report(theorem, seed, k, big_n, l=l)
    except NcprobError as exc:
        raise click.UsageError(str(exc))
    _dump(report)
    sys.exit(0 if report["ok"] else 1)


@main.command("selftest")
@click.option("--seed", type=int, default=0, show_default=True)
def selftest(seed):
    """Run the whole acceptance suite, one pass/fail line per criterion."""
    ok = _selftest.run(seed)
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
