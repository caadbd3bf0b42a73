from django.contrib import admin
from .models import VerificationRun, VerificationCase


class VerificationCaseInline(admin.TabularInline):
    model = VerificationCase
    fields = ('index', 'inputs', 'residual', 'witness')
    readonly_fields = fields
    extra = 0
    can_delete = False


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ('rule', 'passed', 'max_residual', 'tolerance', 'case_count', 'created_at')
    list_filter = ('passed', 'rule', 'created_at')
    search_fields = ('rule', 'requested_by__username')
    inlines = [VerificationCaseInline]
