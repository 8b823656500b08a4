#
# Copyright (C) 2026 evostream contributors
#
# This file is subject to the terms and conditions defined in the file 'LICENSE', which is part of
# this source code package.
#
"""
Schemas, fields and config objects.

A :class:`Schema` is a tree of :class:`Field` declarations. Calling it builds a :class:`Config`
holding one value per field, seeded from the field default or from its environment variable.
Assignments go through the field's conversion and checks, so a config never stores a value its
field rejected.
"""
import os
from functools import lru_cache
from typing import Any, Callable, ClassVar, Dict, Iterator, List, Optional, Tuple, Type, Union

from ..errors import ConfigurationError

ConfigValidator = Callable[["Config"], None]
FieldValidator = Callable[["Config", Any], Any]


def _guarded(config: "Config", node: Optional["Node"], func: Callable, *args: Any) -> Any:
    """
    Call ``func(*args)``, reporting any failure as a :class:`ValidationError` of ``node``.
    """
    try:
        return func(*args)
    except ValidationError:
        raise
    except Exception as err:
        raise ValidationError(config, node, err) from err


def _join(*parts: Optional[str], sep: str = ".") -> str:
    return sep.join(part for part in parts if part)


class ValidationError(ConfigurationError):
    """
    A value, or a whole config section, was rejected. The message starts with the dotted path of
    the value, ``model.buffer: value must be >= 1``.
    """

    def __init__(
        self,
        config: Optional["Config"],
        field: Optional["Node"],
        exc: Union[str, Exception, None],
        path: Optional[str] = None,
    ):
        """
        :param config: config holding the value
        :param field: rejected field, ``None`` when a section validator failed
        :param exc: underlying exception or message
        :param path: report this dotted path instead of the computed one
        """
        super().__init__(config, field, exc, path)
        self.config = config
        self.field = field
        self.exc = exc
        self.explicit_path = path

    @property
    def path(self) -> str:
        if self.explicit_path:
            return self.explicit_path
        section = self.config._path if self.config is not None else ""
        return _join(section, self.field._key if self.field is not None else None)

    def __str__(self) -> str:
        reason = self.exc.strerror if isinstance(self.exc, OSError) else str(self.exc)
        where = self.path
        if isinstance(self.field, Field) and self.field.label:
            where = "%s (%s)" % (where, self.field.label)
        return "%s: %s" % (where, reason) if where else reason


class Node:
    """
    Anything a schema holds: a field or a nested schema.
    """

    #: the value lives in the config and is saved with it
    _stored: ClassVar[bool] = True

    def __init__(self, key: str = ""):
        self._key = key
        self._owner: Optional["Schema"] = None

    def _bind(self, owner: "Schema", key: str) -> None:
        self._owner = owner
        self._key = key

    def _initial(self, cfg: "Config") -> Any:
        return None

    def _read(self, cfg: "Config") -> Any:
        return cfg._values[self._key]

    @property
    def _path(self) -> str:
        keys = []
        node: Optional[Node] = self
        while node is not None:
            keys.append(node._key)
            node = node._owner
        return _join(*reversed(keys))


class Field(Node):
    """
    A single validated value.

    Subclasses override :meth:`_convert`, which turns the incoming value (often a string read
    from an INI file, the environment or the command line) into :attr:`storage_type` and raises
    :class:`ValueError` with a short reason when it cannot. A field is shared by every config
    built from its schema, so it keeps no per-config state.

    Under a schema with an environment prefix the field's variable is the prefix plus its dotted
    key in upper case: ``schema.model.buffer`` with prefix ``EVOSTREAM`` reads
    ``EVOSTREAM_MODEL_BUFFER``.
    """

    storage_type: Any = Any

    def __init__(
        self,
        *,
        key: str = "",
        name: Optional[str] = None,
        required: bool = False,
        default: Any = None,
        validator: Optional[FieldValidator] = None,
        description: Optional[str] = None,
        help: Optional[str] = None,
        env: Optional[Union[bool, str]] = None,
    ):
        """
        :param name: label shown in error messages
        :param required: reject ``None``
        :param default: initial value, or a callable returning it
        :param validator: extra hook ``(config, value) -> value`` run after conversion
        :param description: one line description
        :param help: longer documentation, its first paragraph is the short help
        :param env: ``False`` ignores the environment, a string names the variable
        """
        super().__init__(key)
        self.label = name
        self.required = required
        self._default = default
        self.validator = validator
        self.description = description
        self.help = help.strip() if help else None
        self.env = env

    @property
    def name(self) -> str:
        return self.label or self._key

    @property
    def default(self) -> Any:
        if callable(self._default):
            return self._default()
        return self._default

    @property
    def short_help(self) -> Optional[str]:
        if not self.help:
            return self.description
        return self.help.partition("\n\n")[0]

    @property
    def path(self) -> str:
        """
        :returns: dotted key from the schema root, ``model.buffer`` for example
        """
        return self._path

    def _bind(self, owner: "Schema", key: str) -> None:
        super()._bind(owner, key)
        if self.env is None or self.env is True:
            if self.env is True or owner._env is not None:
                self.env = _join(owner._env, key.upper(), sep="_")

    @property
    def _env_override(self) -> Optional[str]:
        if not isinstance(self.env, str) or not self.env:
            return None
        return os.environ.get(self.env) or None

    def _initial(self, cfg: "Config") -> Any:
        raw = self._env_override
        value = _guarded(cfg, self, self.validate, cfg, raw) if raw else None
        return self.default if value is None else value

    def _write(self, cfg: "Config", value: Any) -> None:
        cfg._values[self._key] = value

    def _convert(self, cfg: "Config", value: Any) -> Any:
        return value

    def validate(self, cfg: "Config", value: Any) -> Any:
        """
        Convert ``value`` to the stored type. ``None`` passes unless the field is required.

        :returns: the converted value
        """
        if value is None:
            if self.required:
                raise ValueError("value is required")
            return None
        converted = self._convert(cfg, value)
        return self.validator(cfg, converted) if self.validator else converted

    def from_basic(self, cfg: "Config", value: Any) -> Any:
        """
        Convert a value read from a config file before it is validated.
        """
        return value

    def to_basic(self, cfg: "Config", value: Any) -> Any:
        """
        Convert a stored value to something a config file can hold.
        """
        return value


class Schema(Node):
    """
    A tree of fields. Reading an undeclared attribute creates a nested schema, so a whole
    configuration is declared with plain assignments:

    .. code-block:: python

        schema = Schema(env="EVOSTREAM")
        schema.model.buffer = IntField(default=60, min=1)
        schema.model.lambda1 = FloatField(default=0.01, min=0)

        config = schema()
        config.model.buffer = "40"  # stored as 40
    """

    def __init__(self, key: str = "", env: Optional[Union[str, bool]] = None):
        """
        :param env: environment variable prefix for every field below this schema, ``True``
            for no prefix
        """
        super().__init__(key)
        self._children: Dict[str, Node] = {}
        self._env: Optional[str] = "" if env is True else (env or None)
        self._validators: List[ConfigValidator] = []

    def _bind(self, owner: "Schema", key: str) -> None:
        super()._bind(owner, key)
        if self._env is None and owner._env is not None:
            self._env = _join(owner._env, key.upper(), sep="_")

    def _initial(self, cfg: "Config") -> "Config":
        return Config(self, cfg)

    def _attach(self, key: str, node: Node) -> Node:
        if not isinstance(node, Node):
            raise TypeError("cannot add a %s to a schema" % type(node).__name__)
        self._children[key] = node
        node._bind(self, key)
        return node

    def _child(self, key: str) -> Node:
        node = self._children.get(key)
        return self._attach(key, Schema()) if node is None else node

    def _walk(self, key: str) -> Tuple["Schema", str]:
        *sections, leaf = key.split(".")
        schema = self
        for section in sections:
            node = schema._child(section)
            if not isinstance(node, Schema):
                raise TypeError("%s is a field, not a schema" % node._path)
            schema = node
        return schema, leaf

    def __setattr__(self, name: str, value: Any) -> None:
        if name.startswith("_"):
            object.__setattr__(self, name, value)
        else:
            self._attach(name, value)

    def __getattr__(self, name: str) -> Node:
        if name.startswith("_"):
            raise AttributeError(name)
        return self._child(name)

    def __getitem__(self, key: str) -> Node:
        schema, leaf = self._walk(key)
        return schema._child(leaf)

    def __setitem__(self, key: str, node: Node) -> None:
        schema, leaf = self._walk(key)
        schema._attach(leaf, node)

    def __iter__(self) -> Iterator[Tuple[str, Node]]:
        return iter(self._children.items())

    def __call__(self, parent: Optional["Config"] = None, **values: Any) -> "Config":
        return Config(self, parent, **values)

    def _check(self, config: "Config", collect_errors: bool) -> List[ValidationError]:
        """
        Re-validate every stored field, then nested sections, then the section validators.
        """
        errors: List[ValidationError] = []

        def run(node: Optional[Node], func: Callable, *args: Any) -> None:
            try:
                _guarded(config, node, func, *args)
            except ValidationError as err:
                if not collect_errors:
                    raise
                errors.append(err)

        sections = []
        for key, node in self._children.items():
            if isinstance(node, Schema):
                sections.append(config._values[key])
            elif isinstance(node, Field) and node._stored:
                run(node, node.validate, config, config._values[key])
        for section in sections:
            errors.extend(section.validate(collect_errors))
        for check in self._validators:
            run(None, check, config)
        return errors


class Config:
    """
    Values of a :class:`Schema`.

    Values are read and assigned as attributes, ``config.model.buffer``, or with dotted keys,
    ``config["model.buffer"]``. Files are read and written through a basic value tree, nested
    dicts of plain values, that a :class:`ConfigFormat` turns into bytes and back.
    """

    def __init__(self, schema: Schema, parent: Optional["Config"] = None, **values: Any):
        """
        :param parent: enclosing config of a nested section
        :param values: initial values, validated like assignments
        """
        self._schema = schema
        self._parent = parent
        self._key = schema._key
        self._values: Dict[str, Any] = {}

        unknown = sorted(set(values) - set(schema._children))
        if unknown:
            raise AttributeError(unknown[0])

        for key, node in schema._children.items():
            if key in values:
                self._set(key, values[key])
            elif node._stored:
                self._values[key] = node._initial(self)

    @property
    def _path(self) -> str:
        if self._parent is not None:
            return _join(self._parent._path, self._key)
        return self._schema._path

    def _node(self, key: str) -> Node:
        node = self._schema._children.get(key)
        if node is None:
            raise AttributeError(key)
        return node

    def _get(self, key: str) -> Any:
        return self._node(key)._read(self)

    def _set(self, key: str, value: Any) -> Any:
        node = self._node(key)
        if isinstance(node, Field):
            value = _guarded(self, node, node.validate, self, value)
            node._write(self, value)
        else:
            value = self._adopt(key, node, value)
            self._values[key] = value
        return value

    def _adopt(self, key: str, node: Node, value: Any) -> "Config":
        if isinstance(value, Config):
            value._parent = self
            value._key = key
            return value
        if isinstance(value, dict):
            section = Config(node, self)  # type: ignore[arg-type]
            section.load_tree(value)
            return section
        raise ValidationError(
            self, node, "a %s cannot replace a config section" % type(value).__name__
        )

    def _locate(self, key: str) -> Tuple["Config", str]:
        *sections, leaf = key.split(".")
        config = self
        for section in sections:
            child = config._get(section)
            if not isinstance(child, Config):
                raise KeyError(key)
            config = child
        return config, leaf

    def __setattr__(self, name: str, value: Any) -> None:
        if name.startswith("_"):
            object.__setattr__(self, name, value)
        else:
            self._set(name, value)

    def __getattr__(self, name: str) -> Any:
        if name.startswith("_"):
            raise AttributeError(name)
        return self._get(name)

    def __getitem__(self, key: str) -> Any:
        config, leaf = self._locate(key)
        return config._get(leaf)

    def __setitem__(self, key: str, value: Any) -> None:
        config, leaf = self._locate(key)
        config._set(leaf, value)

    def __contains__(self, key: str) -> bool:
        try:
            config, leaf = self._locate(key)
        except (AttributeError, KeyError):
            return False
        return leaf in config._values

    def __iter__(self) -> Iterator[Tuple[str, Any]]:
        for key in list(self._values):
            yield key, self._get(key)

    def to_tree(self, virtual: bool = False) -> dict:
        """
        :param virtual: include computed values
        :returns: the basic value tree
        """
        tree = {}
        for key, node in self._schema._children.items():
            if isinstance(node, Schema):
                tree[key] = self._values[key].to_tree(virtual)
            elif not node._stored:
                if virtual:
                    tree[key] = node._read(self)
            elif isinstance(node, Field):
                tree[key] = _guarded(self, node, node.to_basic, self, self._values[key])
        return tree

    def load_tree(self, tree: dict, validate: bool = True) -> None:
        """
        Assign the values of a basic value tree. Values from the tree replace environment
        defaults.

        :param validate: validate the whole section afterwards
        :raises ValidationError: a key is not part of the schema or a value was rejected
        """
        for key, value in tree.items():
            node = self._schema._children.get(key)
            if node is None:
                raise ValidationError(self, None, "unknown option %r" % key)
            if isinstance(node, Schema) and isinstance(value, dict):
                self._values[key].load_tree(value, validate=False)
            elif isinstance(node, Field):
                if node._stored:
                    self._set(key, _guarded(self, node, node.from_basic, self, value))
            else:
                self._set(key, value)

        if validate:
            self.validate()

    def dumps(self, format: str, virtual: bool = False, **kwargs: Any) -> bytes:
        """
        :param format: registered format name
        :param virtual: include computed values
        :param kwargs: format options
        """
        return ConfigFormat.get(format, **kwargs).dumps(self, self.to_tree(virtual))

    def loads(self, content: Union[str, bytes], format: str, **kwargs: Any) -> None:
        """
        :raises ValidationError: the content does not parse or holds rejected values
        """
        if isinstance(content, str):
            content = content.encode()
        parser = ConfigFormat.get(format, **kwargs)
        self.load_tree(_guarded(self, None, parser.loads, self, content))

    def save(self, filename: str, format: str, **kwargs: Any) -> None:
        with open(os.path.expanduser(filename), "wb") as file:
            file.write(self.dumps(format, **kwargs))

    def load(self, filename: str, format: str) -> None:
        with open(os.path.expanduser(filename), "rb") as file:
            self.loads(file.read(), format)

    def validate(self, collect_errors: bool = False) -> List[ValidationError]:
        """
        :param collect_errors: return every error instead of raising the first
        :returns: the collected errors
        """
        return self._schema._check(self, collect_errors)


class ConfigType(Config):
    """
    Config subclass bound to a schema, created by :func:`~evostream.config.make_type`.
    """

    __schema__: ClassVar[Schema]

    def __init__(self, parent: Optional[Config] = None, **values: Any):
        super().__init__(type(self).__schema__, parent, **values)

    def __eq__(self, other: Any) -> bool:
        return type(other) is type(self) and other.to_tree() == self.to_tree()


_FORMATS: Dict[str, Type["ConfigFormat"]] = {}


@lru_cache(maxsize=None)
def _register_builtin_formats() -> None:
    from .formats import FORMATS  # pylint: disable=import-outside-toplevel, cyclic-import

    for name, format_cls in FORMATS:
        _FORMATS.setdefault(name, format_cls)


class ConfigFormat:
    """
    Converts between bytes and basic value trees. Formats are looked up by name.
    """

    @staticmethod
    def register(name: str, format_cls: Type["ConfigFormat"]) -> None:
        _FORMATS[name] = format_cls

    @staticmethod
    def get(name: str, **kwargs: Any) -> "ConfigFormat":
        """
        :param kwargs: format options
        :raises ConfigurationError: no format is registered as ``name``
        """
        _register_builtin_formats()
        format_cls = _FORMATS.get(name)
        if format_cls is None:
            raise ConfigurationError("unknown config format: %s" % name)
        return format_cls(**kwargs)

    def dumps(self, config: Config, tree: dict) -> bytes:
        raise NotImplementedError()

    def loads(self, config: Config, content: bytes) -> dict:
        raise NotImplementedError()
