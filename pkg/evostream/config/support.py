#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Helpers gluing schemas to classes, validators and :mod:`argparse`.
"""
import sys
from argparse import ArgumentParser, Namespace, _ArgumentGroup
from typing import Callable, Iterable, Iterator, Optional, Tuple, Type, TypeVar, Union

from .core import Config, ConfigType, Field, Node, Schema

F = TypeVar("F", bound=Callable)


def make_type(schema: Schema, name: str, module: Optional[str] = None) -> Type[ConfigType]:
    """
    Create a config class bound to ``schema``. ``ExperimentConfig()`` then builds a config the
    way ``schema()`` does, and instances compare equal when their value trees are.

    :param module: ``__module__`` of the class, the calling module by default
    """
    cls = type(name, (ConfigType,), {"__schema__": schema})
    if module is None:
        module = sys._getframe(1).f_globals.get("__name__", "__main__")
    cls.__module__ = module  # type: ignore[assignment]
    return cls


def validator(node: Node) -> Callable[[F], F]:
    """
    Register the decorated function as a check. On a schema, ``func(config)`` runs after the
    section's fields validated and raises :class:`ValueError` on failure. On a field,
    ``func(config, value)`` runs after conversion and returns the value to store.

    .. code-block:: python

        @validator(schema.schedule)
        def _overlap_fits(cfg):
            if cfg.overlap >= cfg.t1:
                raise ValueError("overlap must be shorter than t1")
    """

    def register(func: F) -> F:
        if isinstance(node, Schema):
            node._validators.append(func)
        elif isinstance(node, Field):
            node.validator = func
        else:
            raise TypeError("cannot attach a validator to %s" % type(node).__name__)
        return func

    return register


def iter_fields(schema: Union[Schema, Config]) -> Iterator[Tuple[str, Field]]:
    """
    :returns: ``(dotted key, field)`` for every field below ``schema`` in declaration order
    """
    if isinstance(schema, Config):
        schema = schema._schema
    for key, node in schema:
        if isinstance(node, Schema):
            for subkey, field in iter_fields(node):
                yield key + "." + subkey, field
        elif isinstance(node, Field):
            yield key, node


def add_schema_arguments(
    parser: Union[ArgumentParser, _ArgumentGroup],
    schema: Union[Schema, Config],
    prefix: str = "",
) -> None:
    """
    Add one ``--<prefix><section>-<key>`` option per stored string, number or boolean field.
    Booleans get a ``--no-`` twin. Each option's destination is the dotted key, so the parsed
    namespace goes straight to :func:`cmdline_args_override`; unset options parse as ``None``.
    """
    for key, field in iter_fields(schema):
        if not field._stored:
            continue
        flag = "--" + prefix + key.replace(".", "-").replace("_", "-").lower()
        if field.storage_type is bool:
            switch = {"dest": key, "action": "store_const", "default": None}
            parser.add_argument(flag, const=True, help=field.short_help, **switch)
            parser.add_argument("--no-" + flag[2:], const=False, **switch)
        elif field.storage_type in (str, int, float):
            metavar = key.replace(".", "_").upper()
            parser.add_argument(flag, dest=key, metavar=metavar, help=field.short_help)


def cmdline_args_override(
    config: Config, args: Namespace, ignore: Optional[Union[str, Iterable[str]]] = None
) -> None:
    """
    Assign every non-``None`` value of ``args`` whose destination is a dotted config key.
    Other destinations, such as the subcommand name, are skipped along with ``ignore``.
    """
    skip = {ignore} if isinstance(ignore, str) else set(ignore or ())
    for key, value in vars(args).items():
        if value is not None and key not in skip and key in config:
            config[key] = value


def copy_config(config: Config) -> Config:
    """
    :returns: an independent config with the same values
    """
    clone = type(config)() if isinstance(config, ConfigType) else config._schema()
    clone.load_tree(config.to_tree(), validate=False)
    return clone
