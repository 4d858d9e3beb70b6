from pathlib import Path

from pydantic import ValidationError

from selfsim.catalog import lookup_digits, lookup_group, lookup_rules
from selfsim.config import logger
from selfsim.exceptions import InvalidDefinition, UsageError
from selfsim.models import DigitSystemConfig
from selfsim.utils.abelian import DigitSystem, validate_digit_system
from selfsim.utils.dsl import parse_group
from selfsim.utils.groups import GroupDef
from selfsim.utils.invsemi import RuleTable, checked, parse_rule_table

CATALOG_PREFIX = "catalog:"


def _read(source: str, flag: str) -> str:
    path = Path(source)
    if not path.is_file():
        raise UsageError(f"{flag}: no catalog entry or file named {source!r}", exit_code=2)
    logger.info(f"reading {flag[2:]} definition from {path}")
    return path.read_text()


def get_group(source: str) -> GroupDef:
    """Resolve --group into a group definition."""
    if source.startswith(CATALOG_PREFIX):
        return lookup_group(source[len(CATALOG_PREFIX):])
    return parse_group(_read(source, "--group"))


def get_digit_system(source: str) -> DigitSystem:
    if source.startswith(CATALOG_PREFIX):
        ds = lookup_digits(source[len(CATALOG_PREFIX):])
    else:
        try:
            ds = DigitSystem.from_config(DigitSystemConfig.model_validate_json(_read(source, "--system")))
        except ValidationError as e:
            raise InvalidDefinition(f"bad digit system file {source}: {e}")
    validate_digit_system(ds)
    return ds


def get_rule_table(source: str) -> RuleTable:
    if source.startswith(CATALOG_PREFIX):
        return lookup_rules(source[len(CATALOG_PREFIX):])
    return checked(parse_rule_table(_read(source, "--table")))
