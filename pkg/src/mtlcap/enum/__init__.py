from .mixins import ChoiceMixin

__all__ = ["ChoiceMixin"]
