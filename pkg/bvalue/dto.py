"""
DTO Module
==========

Contains the :py:class:`~bvalue.dto.DTOMixin` class.
"""
from abc import ABC
from typing import Any, Dict

from pydantic.v1 import BaseModel


class DTOMixin(ABC, BaseModel):
    """
    Mixin to create immutable data-transfer objects.

    This class is a customized version of :py:class:`pydantic.BaseModel`, which gives it some quirks:

     * A subclass of ``DTOMixin`` must be instantiated with keyword arguments.
     * Instances are frozen; every operation in the library returns new objects.
     * Enum fields are stored as their string values, so ``dto()`` is directly JSON serializable.

    Validators on subclasses raise :py:mod:`bvalue.errors` exceptions directly,
    those are not wrapped in a pydantic ``ValidationError``.
    """

    class Config:
        frozen = True
        use_enum_values = True
        arbitrary_types_allowed = True

    def dto(self, **kwargs) -> Dict[str, Any]:
        return self.dict(
                exclude_none=True,
                **kwargs,
        )

    def json(
            self,
            exclude_none=True,
            **kwargs
    ) -> str:
        return super().json(
                exclude_none=exclude_none,
                **kwargs,
        )
