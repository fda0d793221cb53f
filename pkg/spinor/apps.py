from django.apps import AppConfig


class SpinorConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'spinor'
    verbose_name = 'Polar spinors'
