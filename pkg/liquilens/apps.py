"""App config for liquilens."""

from django.apps import AppConfig


class LiquilensConfig(AppConfig):
    """App config for liquilens."""

    name = "liquilens"
    verbose_name = "Liquid lens modeling"
