from selfsim.catalog import list_entries, lookup
from selfsim.commands import CommandRouter, arg, wrap
from selfsim.exceptions import UsageError

router = CommandRouter()


@router.command("catalog", "List catalog entries or show one in its definition format",
                [arg("action", choices=["list", "show"]), arg("name", nargs="?", default=None)],
                default_format="text")
@router.cites("catalog.list_entries", "standard examples: adding machine, Grigorchuk group, IMG(z^2 + c), Fabrykowski-Gupta group, Chebyshev polynomials")
def catalog_command(args):
    def run():
        if args.action == "list":
            entries = list_entries()
            if args.output_format == "json":
                return [{"name": e.name, "kind": e.kind, "provenance": e.provenance, "facts": e.facts} for e in entries]
            return "".join(f"{e.name}\t{e.kind}\t{e.provenance}\n" for e in entries)
        if not args.name:
            raise UsageError("catalog show needs an entry name", exit_code=2)
        entry = lookup(args.name)
        return entry.render()
    return wrap("catalog", run)
