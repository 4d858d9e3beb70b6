from selfsim.commands import GENS, GROUP, LEVEL, CommandRouter, arg, parse_gens, wrap
from selfsim.dependencies import get_group
from selfsim.utils import spectra as SP

router = CommandRouter()

SAMPLES = arg("--samples", type=int, default=10, help="random evaluation points")
CHECK_TOL = arg("--check-tol", type=float, default=1e-8, help="relative error allowed between the two sides")
FG_GROUP = arg("--group", default="catalog:fabrykowski_gupta", help="ternary group generated by a, s")
PHI_GROUP = arg("--group", default="catalog:img_z2_minus_1", help="binary group with a = (b, 1)s, b = (a, 1)")


@router.command("spectrum", "Eigenvalues of the Hecke operator on level n",
                [GROUP, LEVEL, GENS, arg("--unnormalized", action="store_true", help="plain sum of the permutation matrices")])
@router.cites("utils.spectra.eigenvalues_sym", "spectra of Hecke operators on the levels; level spectra are nested")
def spectrum_command(args):
    """Spectrum of the sum over s and s^-1 of the level-n permutation matrices, divided by their count unless --unnormalized."""
    def run():
        group = get_group(args.group)
        m = SP.hecke_matrix(group, parse_gens(group, args.gens), args.level,
                            normalized=not args.unnormalized, bound=args.max_level)
        spectrum = SP.eigenvalues_sym(m, args.tol)
        spectrum.seed = args.seed
        return spectrum.model_dump()
    return wrap("spectrum", run)


@router.command("fg-closed", "Closed-form level spectrum of the Fabrykowski-Gupta group", [LEVEL])
@router.cites("utils.spectra.fg_spectrum_closed", "level spectra of the Fabrykowski-Gupta group by renormalization")
def fg_closed_command(args):
    def run():
        return SP.fg_spectrum_closed(args.level).model_dump()
    return wrap("fg-closed", run)


@router.command("detq-check", "Check the Fabrykowski-Gupta determinant recursion at random points",
                [FG_GROUP, LEVEL, SAMPLES, CHECK_TOL])
@router.cites("utils.spectra.fg_detq_check", "det Q_n = (alpha beta gamma^2)^(3^(n-2)) det Q_(n-1) renormalization of the Fabrykowski-Gupta pencil")
def detq_check_command(args):
    def run():
        return SP.fg_detq_check(get_group(args.group), args.level, args.samples, args.seed, args.check_tol).model_dump()
    return wrap("detq-check", run)


@router.command("phi-check", "Check the determinant recursion of IMG(z^2 - 1) from level k to k + 1",
                [PHI_GROUP, arg("--k", type=int, required=True), SAMPLES, CHECK_TOL])
@router.cites("utils.spectra.img_phi_recursion_check", "Phi_(k+1)(l; l1, l2) = Phi_k(L l - 2 l1^2; L l2, -l1^2) with L = l + 2 l2 for IMG(z^2 - 1)")
def phi_check_command(args):
    def run():
        return SP.img_phi_recursion_check(get_group(args.group), args.k, args.samples, args.seed, args.check_tol).model_dump()
    return wrap("phi-check", run)
