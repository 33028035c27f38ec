# Copyright Contributors to the svrgreg project.
# SPDX-License-Identifier: Apache-2.0

from collections import OrderedDict

from multipledispatch import Dispatcher

from svrgreg.util import ValidationError


class MethodDispatcher(Dispatcher):
    """
    Dispatcher whose missing signatures raise a readable error.
    """
    def resolve(self, *args):
        types = tuple(map(type, args))
        try:
            return self._cache[types]
        except KeyError:
            func = self.dispatch(*types)
            if func is None:
                raise NotImplementedError(
                    'Could not find signature for %s: <%s>' %
                    (self.name, ', '.join(cls.__name__ for cls in types)))
            self._cache[types] = func
            return func


class KeyedRegistry(object):
    """
    Maps method names to dispatchers over argument types.
    Keys keep registration order.
    """
    def __init__(self, name='method'):
        self.name = name
        self.registry = OrderedDict()

    def register(self, key, *types):
        if key not in self.registry:
            self.registry[key] = MethodDispatcher(key)
        register = self.registry[key].register

        # Returns the original function so decorators can be stacked.
        def decorator(fn):
            register(*types)(fn)
            return fn

        return decorator

    def __contains__(self, key):
        return key in self.registry

    def __iter__(self):
        return iter(self.registry)

    def keys(self):
        return list(self.registry)

    def __getitem__(self, key):
        try:
            return self.registry[key]
        except KeyError:
            raise ValidationError("unknown {} {!r}, expected one of: {}".format(
                self.name, key, ", ".join(self.registry))) from None

    def __call__(self, key, *args, **kwargs):
        dispatcher = self[key]
        return dispatcher.resolve(*args)(*args, **kwargs)


__all__ = [
    'KeyedRegistry',
    'MethodDispatcher',
]
