from rest_framework import serializers


class CheckSerializer(serializers.Serializer):
    name = serializers.CharField()
    observed = serializers.JSONField()
    limit = serializers.JSONField()
    passed = serializers.BooleanField()


class ReportSerializer(serializers.Serializer):
    command = serializers.CharField()
    version = serializers.CharField()
    conventions = serializers.DictField()
    tolerances = serializers.DictField(child=serializers.FloatField())
    results = serializers.JSONField()
    checks = CheckSerializer(many=True)
    passed = serializers.BooleanField()
