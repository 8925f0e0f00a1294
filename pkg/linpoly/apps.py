from django.apps import AppConfig


class LinpolyConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'linpoly'
